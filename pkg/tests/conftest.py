import numpy as np
import pytest

from evgraph.core import EventGraph, EventNode, SvoTriple, TemporalEdge


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def basis(i: int, dim: int) -> np.ndarray:
    v = np.zeros(dim)
    v[i] = 1.0
    return v


def make_node(nid: str, embedding=None, dim: int = 8, text: str | None = None,
              salience: float = 0.5, prov=None, rng: np.random.Generator | None = None) -> EventNode:
    if embedding is None:
        rng = rng or np.random.default_rng(abs(hash(nid)) % (2**32))
        embedding = unit(rng.normal(size=dim))
    return EventNode(
        node_id=nid,
        text=text if text is not None else f"event {nid}",
        svo=SvoTriple(subject="", verb="happens", object=""),
        embedding=unit(embedding),
        salience=salience,
        provenance=frozenset(prov) if prov else frozenset({(nid, 0)}),
    )


def make_graph(edge_list, nodes=None, side: str = "left", topic: str = "t1",
               dim: int = 8, embeddings: dict | None = None) -> EventGraph:
    """Build a graph from (src, dst, conf) triples plus optional extra nodes."""
    ids = set(nodes or [])
    for s, d, _ in edge_list:
        ids.add(s)
        ids.add(d)
    embeddings = embeddings or {}
    node_map = {
        nid: make_node(nid, embedding=embeddings.get(nid), dim=dim) for nid in sorted(ids)
    }
    edges = tuple(TemporalEdge(src=s, dst=d, confidence=c) for s, d, c in edge_list)
    return EventGraph(topic_id=topic, side=side, nodes=node_map, edges=edges)


def random_digraph(rng: np.random.Generator, max_nodes: int = 8, edge_prob: float = 0.4,
                   dim: int = 4) -> EventGraph:
    n = int(rng.integers(2, max_nodes + 1))
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < edge_prob:
                edges.append((f"n{i}", f"n{j}", round(float(rng.random()), 6)))
    return make_graph(edges, nodes=[f"n{i}" for i in range(n)], dim=dim)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
