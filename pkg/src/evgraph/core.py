"""Core domain types: articles, event nodes, temporal edges, event graphs.

Everything here is immutable after construction and all operations are pure,
so graphs can be shared freely across concurrent workers.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

EMBEDDING_NORM_TOL = 1e-6

#: Graph-level side label for cross-side merge results. Articles always carry
#: a concrete ``Side``; only graphs can be "merged".
MERGED = "merged"

GRAPH_SIDES = ("left", "right", "center", MERGED)


class Side(str, Enum):
    """Political leaning of one article."""

    LEFT = "left"
    RIGHT = "right"
    CENTER = "center"


@dataclass(frozen=True)
class SvoTriple:
    """Subject-verb-object extraction of an event sentence."""

    subject: str
    verb: str
    object: str

    def __post_init__(self):
        if not self.verb:
            raise ValueError("SvoTriple.verb must be non-empty")


@dataclass(frozen=True)
class ArticleRecord:
    """One side-labeled news article as ingested from a dataset record.

    ``salience``, ``embeddings`` and ``svos`` are optional precomputed
    per-sentence values; when present they must align with ``sentences``.
    """

    id: str
    topic_id: str
    side: Side
    sentences: tuple[str, ...]
    salience: tuple[float, ...] | None = None
    embeddings: tuple[np.ndarray, ...] | None = None
    svos: tuple[SvoTriple | None, ...] | None = None

    def __post_init__(self):
        if not self.sentences:
            raise ValueError(f"article {self.id!r}: sentence list is empty")
        n = len(self.sentences)
        if self.salience is not None:
            if len(self.salience) != n:
                raise ValueError(f"article {self.id!r}: {len(self.salience)} salience scores for {n} sentences")
            for s in self.salience:
                if not 0.0 <= s <= 1.0:
                    raise ValueError(f"article {self.id!r}: salience {s} outside [0,1]")
        if self.embeddings is not None and len(self.embeddings) != n:
            raise ValueError(f"article {self.id!r}: {len(self.embeddings)} embeddings for {n} sentences")
        if self.svos is not None and len(self.svos) != n:
            raise ValueError(f"article {self.id!r}: {len(self.svos)} svos for {n} sentences")


@dataclass(frozen=True)
class EventNode:
    """An atom event: one salient sentence plus its derived features.

    ``provenance`` records every (article id, sentence index) this node was
    built from; merging unions these sets, so it is never empty.
    """

    node_id: str
    text: str
    svo: SvoTriple
    embedding: np.ndarray
    salience: float
    provenance: frozenset[tuple[str, int]]

    def __post_init__(self):
        emb = np.asarray(self.embedding, dtype=float)
        if emb.ndim != 1:
            raise ValueError(f"node {self.node_id!r}: embedding must be a vector")
        norm = float(np.linalg.norm(emb))
        if abs(norm - 1.0) > EMBEDDING_NORM_TOL:
            raise ValueError(f"node {self.node_id!r}: embedding norm {norm} != 1")
        emb.setflags(write=False)
        object.__setattr__(self, "embedding", emb)
        if not 0.0 <= self.salience <= 1.0:
            raise ValueError(f"node {self.node_id!r}: salience {self.salience} outside [0,1]")
        if not self.provenance:
            raise ValueError(f"node {self.node_id!r}: provenance is empty")


@dataclass(frozen=True, order=True)
class TemporalEdge:
    """Directed before-relation between two event nodes."""

    src: str
    dst: str
    confidence: float
    relation: str = "before"

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError(f"self-loop edge on {self.src!r}")
        if self.relation != "before":
            raise ValueError(f"unsupported edge relation {self.relation!r}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"edge {self.src}->{self.dst}: confidence {self.confidence} outside [0,1]")


@dataclass(frozen=True)
class EventGraph:
    """Directed graph of event nodes with confidence-weighted temporal edges.

    ``side`` is one of left/right/center for induced and same-side graphs, or
    ``"merged"`` after cross-side merging. ``role`` is a runtime marker (set
    to ``"neutral"`` by pruning) and is not serialized.
    """

    topic_id: str
    side: str
    nodes: Mapping[str, EventNode]
    edges: tuple[TemporalEdge, ...]
    role: str = field(default="", compare=False)

    def __post_init__(self):
        side = self.side.value if isinstance(self.side, Side) else self.side
        if side not in GRAPH_SIDES:
            raise ValueError(f"graph side {self.side!r} not in {GRAPH_SIDES}")
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "nodes", dict(self.nodes))
        seen_pairs = set()
        for e in self.edges:
            if e.src not in self.nodes or e.dst not in self.nodes:
                raise ValueError(f"edge {e.src}->{e.dst} references a missing node")
            if (e.src, e.dst) in seen_pairs:
                raise ValueError(f"duplicate edge {e.src}->{e.dst}")
            seen_pairs.add((e.src, e.dst))
        dims = {n.embedding.shape[0] for n in self.nodes.values()}
        if len(dims) > 1:
            raise ValueError(f"mixed embedding dimensions in graph: {sorted(dims)}")

    def node_ids(self) -> list[str]:
        """Node ids in the canonical (sorted) order used by matrix code."""
        return sorted(self.nodes)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------------------
# Graph algorithms
# ---------------------------------------------------------------------------

def _adjacency(edges: Iterable[TemporalEdge]) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {}
    for e in edges:
        adj.setdefault(e.src, []).append(e.dst)
    return adj


def _reaches(adj: dict[str, list[str]], start: str, goal: str) -> bool:
    """BFS reachability start -> goal over the adjacency map."""
    if start == goal:
        return True
    queue = deque([start])
    seen = {start}
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v == goal:
                return True
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return False


def topological_order(graph: EventGraph) -> list[str] | None:
    """Kahn topological sort; None if the graph has a directed cycle."""
    indeg = {nid: 0 for nid in graph.nodes}
    adj = _adjacency(graph.edges)
    for e in graph.edges:
        indeg[e.dst] += 1
    queue = deque(sorted(nid for nid, d in indeg.items() if d == 0))
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in adj.get(u, ()):
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return order if len(order) == len(graph.nodes) else None


def is_acyclic(graph: EventGraph) -> bool:
    return topological_order(graph) is not None


def dagify_trace(graph: EventGraph) -> tuple[EventGraph, list[TemporalEdge]]:
    """Like :func:`dagify` but also returns the removed edges in order.

    At each step, only edges currently lying on at least one directed cycle
    are candidates (an edge u->v is on a cycle iff v still reaches u); the one
    with the lowest confidence is removed, ties broken by (src, dst).
    """
    edges = list(graph.edges)
    removed: list[TemporalEdge] = []
    while True:
        adj = _adjacency(edges)
        on_cycle = [e for e in edges if _reaches(adj, e.dst, e.src)]
        if not on_cycle:
            break
        victim = min(on_cycle, key=lambda e: (e.confidence, e.src, e.dst))
        edges.remove(victim)
        removed.append(victim)
    out = replace(graph, edges=tuple(edges))
    return out, removed


def dagify(graph: EventGraph) -> EventGraph:
    """Break directed cycles by repeated lowest-confidence edge removal."""
    out, _ = dagify_trace(graph)
    return out


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity of two equal-dimension nonzero vectors."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine of zero vector is undefined")
    return float(np.dot(u, v) / (nu * nv))


# ---------------------------------------------------------------------------
# Serialization: graph JSON and DOT export
# ---------------------------------------------------------------------------

def graph_to_json(graph: EventGraph) -> dict:
    """Graph as a plain JSON-ready dict (one object per graph)."""
    return {
        "topic_id": graph.topic_id,
        "side": graph.side,
        "nodes": [
            {
                "id": n.node_id,
                "text": n.text,
                "svo": {"s": n.svo.subject, "v": n.svo.verb, "o": n.svo.object},
                "embedding": [float(x) for x in n.embedding],
                "salience": n.salience,
                "prov": sorted([[a, i] for a, i in n.provenance]),
            }
            for n in (graph.nodes[nid] for nid in graph.node_ids())
        ],
        "edges": [
            {"src": e.src, "dst": e.dst, "rel": e.relation, "conf": e.confidence}
            for e in graph.edges
        ],
    }


def graph_from_json(obj: dict) -> EventGraph:
    nodes = {}
    for n in obj["nodes"]:
        node = EventNode(
            node_id=n["id"],
            text=n["text"],
            svo=SvoTriple(n["svo"]["s"], n["svo"]["v"], n["svo"]["o"]),
            embedding=np.asarray(n["embedding"], dtype=float),
            salience=float(n["salience"]),
            provenance=frozenset((a, int(i)) for a, i in n["prov"]),
        )
        nodes[node.node_id] = node
    edges = tuple(
        TemporalEdge(src=e["src"], dst=e["dst"], confidence=float(e["conf"]), relation=e["rel"])
        for e in obj["edges"]
    )
    return EventGraph(topic_id=obj["topic_id"], side=obj["side"], nodes=nodes, edges=edges)


def dump_graph(graph: EventGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_json(graph), fh, sort_keys=True)
        fh.write("\n")


def load_graph(path) -> EventGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_json(json.load(fh))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(graph: EventGraph) -> str:
    """DOT digraph; node label = text truncated to 60 chars, edge label = confidence."""
    lines = [f"digraph {_dot_quote(graph.topic_id)} {{"]
    for nid in graph.node_ids():
        label = graph.nodes[nid].text[:60]
        lines.append(f"  {_dot_quote(nid)} [label={_dot_quote(label)}];")
    for e in sorted(graph.edges):
        lines.append(f"  {_dot_quote(e.src)} -> {_dot_quote(e.dst)} [label={_dot_quote(f'{e.confidence:.2f}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
