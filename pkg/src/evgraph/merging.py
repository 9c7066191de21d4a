"""Coreference-driven graph merging: same-side folds and the cross-side merge."""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable

from .core import MERGED, EventGraph, EventNode, TemporalEdge, dagify
from .induction import DEFAULT_VERBS, extract_svo
from .providers import CoreferenceScorer, EmbeddingProvider, Neutralizer

RepresentativeRule = Callable[[EventNode, EventNode], EventNode]


@dataclass(frozen=True)
class Matching:
    """Partial one-to-one correspondence between two node sets."""

    pairs: tuple[tuple[str, str, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        left = [a for a, _, _ in self.pairs]
        right = [b for _, b, _ in self.pairs]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise ValueError("matching is not one-to-one")

    def __len__(self) -> int:
        return len(self.pairs)

    def total_score(self) -> float:
        return sum(s for _, _, s in self.pairs)


@dataclass(frozen=True)
class MergeConfig:
    coref_threshold: float = 0.5
    rng_seed: int = 13

    def __post_init__(self):
        if not 0.0 <= self.coref_threshold <= 1.0:
            raise ValueError("coref_threshold must be in [0,1]")


def greedy_one_to_one(
    ids_a: list[str],
    ids_b: list[str],
    score: Callable[[str, str], float],
    threshold: float,
) -> list[tuple[str, str, float]]:
    """Repeatedly take the globally best unmatched pair with score > threshold.

    Ties break by (id_a, id_b). This is the shared matcher behind coreference
    merging, pseudo-labeling and the graph distance metrics.
    """
    candidates = []
    for a in ids_a:
        for b in ids_b:
            s = score(a, b)
            if s > threshold:
                candidates.append((s, a, b))
    candidates.sort(key=lambda t: (-t[0], t[1], t[2]))
    used_a: set[str] = set()
    used_b: set[str] = set()
    picked = []
    for s, a, b in candidates:
        if a in used_a or b in used_b:
            continue
        used_a.add(a)
        used_b.add(b)
        picked.append((a, b, s))
    return picked


def match_nodes(
    a: EventGraph, b: EventGraph, scorer: CoreferenceScorer, threshold: float
) -> Matching:
    """Greedy one-to-one coreference matching between two graphs' nodes."""
    pairs = greedy_one_to_one(
        a.node_ids(),
        b.node_ids(),
        lambda ia, ib: scorer.score(a.nodes[ia], b.nodes[ib]),
        threshold,
    )
    return Matching(pairs=tuple(pairs))


def same_side_rule(rng: random.Random) -> RepresentativeRule:
    """Coreferential same-side nodes collapse to a randomly chosen input node."""

    def rule(na: EventNode, nb: EventNode) -> EventNode:
        pick = na if rng.random() < 0.5 else nb
        return replace(pick, provenance=na.provenance | nb.provenance)

    return rule


def cross_side_rule(neutralizer: Neutralizer, embedder: EmbeddingProvider) -> RepresentativeRule:
    """Cross-side pairs are rewritten by the neutralizer and re-embedded."""

    def rule(na: EventNode, nb: EventNode) -> EventNode:
        text = neutralizer.neutralize(na.text, nb.text)
        if not text:
            raise ValueError(f"neutralizer returned empty text for ({na.node_id}, {nb.node_id})")
        return EventNode(
            node_id=f"{na.node_id}+{nb.node_id}",
            text=text,
            svo=extract_svo(text, DEFAULT_VERBS),
            embedding=embedder.embed(text),
            salience=max(na.salience, nb.salience),
            provenance=na.provenance | nb.provenance,
        )

    return rule


def merge_pair(
    a: EventGraph, b: EventGraph, matching: Matching, rule: RepresentativeRule, side: str | None = None
) -> EventGraph:
    """Collapse matched pairs, copy the rest, re-point edges, dagify.

    Duplicate edges created by the collapse keep the max confidence;
    self-loops are dropped.
    """
    for ida, idb, _ in matching.pairs:
        if ida not in a.nodes or idb not in b.nodes:
            raise ValueError(f"matching references unknown nodes ({ida}, {idb})")

    nodes: dict[str, EventNode] = {}
    remap_a: dict[str, str] = {}
    remap_b: dict[str, str] = {}

    def _add(node: EventNode):
        if node.node_id in nodes:
            raise ValueError(f"node id collision while merging: {node.node_id!r}")
        nodes[node.node_id] = node

    for ida, idb, _ in matching.pairs:
        merged = rule(a.nodes[ida], b.nodes[idb])
        _add(merged)
        remap_a[ida] = merged.node_id
        remap_b[idb] = merged.node_id
    for nid, node in a.nodes.items():
        if nid not in remap_a:
            _add(node)
            remap_a[nid] = nid
    for nid, node in b.nodes.items():
        if nid not in remap_b:
            _add(node)
            remap_b[nid] = nid

    best: dict[tuple[str, str], float] = {}
    for edges, remap in ((a.edges, remap_a), (b.edges, remap_b)):
        for e in edges:
            src, dst = remap[e.src], remap[e.dst]
            if src == dst:
                continue
            key = (src, dst)
            if e.confidence > best.get(key, -1.0):
                best[key] = e.confidence
    edges = tuple(
        TemporalEdge(src=s, dst=d, confidence=c) for (s, d), c in sorted(best.items())
    )

    merged = EventGraph(
        topic_id=a.topic_id,
        side=side if side is not None else a.side,
        nodes=nodes,
        edges=edges,
    )
    return dagify(merged)


def fold_merge(
    graphs: list[EventGraph],
    scorer: CoreferenceScorer,
    config: MergeConfig,
    rule: RepresentativeRule,
    side: str | None = None,
) -> EventGraph:
    """Left-fold merge in list order with one seeded matcher pass per step."""
    if not graphs:
        raise ValueError("cannot merge an empty list of graphs")
    result = dagify(graphs[0]) if side is None else replace(dagify(graphs[0]), side=side)
    for g in graphs[1:]:
        matching = match_nodes(result, g, scorer, config.coref_threshold)
        result = merge_pair(result, g, matching, rule, side=side)
    return result


def merge_side(graphs: list[EventGraph], scorer: CoreferenceScorer, config: MergeConfig = MergeConfig()) -> EventGraph:
    """Merge all graphs of one side into a single representative graph."""
    if not graphs:
        raise ValueError("cannot merge an empty list of graphs")
    sides = {g.side for g in graphs}
    topics = {g.topic_id for g in graphs}
    if len(sides) > 1 or len(topics) > 1:
        raise ValueError(f"merge_side needs one side and one topic, got sides={sorted(sides)} topics={sorted(topics)}")
    rng = random.Random(config.rng_seed)
    return fold_merge(graphs, scorer, config, same_side_rule(rng))


def merge_cross(
    g_left: EventGraph,
    g_right: EventGraph,
    neutralizer: Neutralizer,
    embedder: EmbeddingProvider,
    scorer: CoreferenceScorer,
    config: MergeConfig = MergeConfig(),
) -> EventGraph:
    """Merge the left and right side graphs into one graph labeled merged.

    Coreferential cross-side pairs are rewritten by the neutralizer; the
    merged node gets a fresh embedding of the rewritten text, the union of
    provenance and the max salience.
    """
    if g_left.side != "left" or g_right.side != "right":
        raise ValueError(f"merge_cross expects (left, right) graphs, got ({g_left.side}, {g_right.side})")
    if g_left.topic_id != g_right.topic_id:
        raise ValueError("merge_cross expects graphs of the same topic")
    matching = match_nodes(g_left, g_right, scorer, config.coref_threshold)
    return merge_pair(g_left, g_right, matching, cross_side_rule(neutralizer, embedder), side=MERGED)
