"""Graph distance metrics, the lexicon bias metric, and the two baselines."""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass

from .core import ArticleRecord, EventGraph, EventNode, TemporalEdge, cosine, dagify
from .induction import svo_for_sentence
from .lexicon import BackgroundCounts, VadLexicon, tokenize
from .merging import MergeConfig, fold_merge, greedy_one_to_one, same_side_rule
from .providers import AFTER, BEFORE, ProviderSet


@dataclass(frozen=True)
class PrfScore:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class BiasScore:
    arousal_pos: float
    arousal_neg: float

    def __post_init__(self):
        if self.arousal_pos < 0 or self.arousal_neg < 0:
            raise ValueError("arousal sums must be non-negative")


def _prf_from_counts(tp: int, fp: int, fn: int) -> PrfScore:
    if tp == 0 and fp == 0 and fn == 0:
        return PrfScore(1.0, 1.0, 1.0)
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * p * r / (p + r) if p + r else 0.0
    return PrfScore(p, r, f1)


def node_prf(pred: EventGraph, target: EventGraph, threshold: float = 0.5) -> PrfScore:
    """Greedy node matching above the similarity threshold, then P/R/F1.

    Matched pairs are true positives; predicted leftovers are false positives
    and target leftovers false negatives. Two empty graphs score (1,1,1).
    """
    matched = greedy_one_to_one(
        pred.node_ids(),
        target.node_ids(),
        lambda a, b: cosine(pred.nodes[a].embedding, target.nodes[b].embedding),
        threshold,
    )
    tp = len(matched)
    return _prf_from_counts(tp, pred.num_nodes - tp, target.num_nodes - tp)


def edge_prf(pred: EventGraph, target: EventGraph, threshold: float = 0.5) -> PrfScore:
    """Edge-level variant: endpoint-wise similarity, direction preserved.

    An edge pair scores (sim(src_p, src_t) + sim(dst_p, dst_t)) / 2; greedy
    one-to-one matching over edges mirrors the node metric.
    """
    pred_edges = [f"{e.src}\x1f{e.dst}" for e in sorted(pred.edges)]
    target_edges = [f"{e.src}\x1f{e.dst}" for e in sorted(target.edges)]

    def sim(pe: str, te: str) -> float:
        ps, pd = pe.split("\x1f")
        ts, td = te.split("\x1f")
        return (
            cosine(pred.nodes[ps].embedding, target.nodes[ts].embedding)
            + cosine(pred.nodes[pd].embedding, target.nodes[td].embedding)
        ) / 2.0

    matched = greedy_one_to_one(pred_edges, target_edges, sim, threshold)
    tp = len(matched)
    return _prf_from_counts(tp, len(pred_edges) - tp, len(target_edges) - tp)


def _token_set(graph: EventGraph) -> set[str]:
    out: set[str] = set()
    for node in graph.nodes.values():
        out.update(tokenize(node.text))
    return out


def arousal_bias(pred: EventGraph, target: EventGraph, lexicon: VadLexicon) -> BiasScore:
    """Summed arousal of biased tokens unique to the predicted graph.

    Tokens shared with the target graph are filtered out first; the rest count
    toward the positive sum when valence > 0.65 and the negative sum when
    valence < 0.35. Unknown tokens contribute nothing.
    """
    unique = _token_set(pred) - _token_set(target)
    pos = neg = 0.0
    for tok in sorted(unique):  # stable summation order across processes
        entry = lexicon.get(tok)
        if entry is None:
            continue
        if entry.valence > 0.65:
            pos += entry.arousal
        elif entry.valence < 0.35:
            neg += entry.arousal
    return BiasScore(arousal_pos=pos, arousal_neg=neg)


def corpus_bias(scores: list[BiasScore]) -> BiasScore:
    """Component-wise mean over per-topic bias scores."""
    if not scores:
        raise ValueError("cannot average an empty list of bias scores")
    return BiasScore(
        arousal_pos=sum(s.arousal_pos for s in scores) / len(scores),
        arousal_neg=sum(s.arousal_neg for s in scores) / len(scores),
    )


def word_salience(freq_w: int, n: int, bsf_w: int) -> float:
    """(1 + ln freq)^2 * ln(N / bsf); natural log throughout."""
    if freq_w < 1 or n < 1 or bsf_w < 1:
        raise ValueError("word_salience requires freq >= 1, N >= 1, bsf >= 1")
    return (1.0 + math.log(freq_w)) ** 2 * math.log(n / bsf_w)


def baseline_salience_ranking(
    articles: list[ArticleRecord],
    background: BackgroundCounts,
    providers: ProviderSet,
    top_k: int = 10,
    temporal_confidence_floor: float = 0.0,
    verbs=None,
) -> EventGraph:
    """Concatenate articles, rank sentences by mean word salience, induce a graph.

    Sentence positions in the concatenated document drive the temporal hints,
    exactly as single-article induction does with in-article positions.
    Sentence scores are min-max scaled so node salience stays in [0,1].
    """
    if not articles:
        raise ValueError("baseline needs at least one article")
    from .induction import DEFAULT_VERBS

    verbs = verbs if verbs is not None else DEFAULT_VERBS
    topic = articles[0].topic_id
    concat: list[tuple[ArticleRecord, int, str]] = []
    for article in articles:
        for i, sent in enumerate(article.sentences):
            concat.append((article, i, sent))

    freq = Counter(tok for _, _, sent in concat for tok in tokenize(sent))
    scores = []
    for _, _, sent in concat:
        toks = tokenize(sent)
        if toks:
            scores.append(
                sum(word_salience(freq[t], background.total_sentences, background.bsf(t)) for t in toks)
                / len(toks)
            )
        else:
            scores.append(0.0)
    lo, hi = min(scores), max(scores)
    scaled = [1.0] * len(scores) if hi == lo else [(s - lo) / (hi - lo) for s in scores]

    ranked = sorted(range(len(concat)), key=lambda i: (-scores[i], i))
    picked = sorted(ranked[: min(top_k, len(concat))])

    nodes: dict[str, EventNode] = {}
    order: list[tuple[int, str]] = []
    for pos in picked:
        article, idx, sent = concat[pos]
        node = EventNode(
            node_id=f"{article.id}:{idx}",
            text=sent,
            svo=svo_for_sentence(article, idx, verbs),
            embedding=providers.embedder.embed(sent),
            salience=scaled[pos],
            provenance=frozenset({(article.id, idx)}),
        )
        nodes[node.node_id] = node
        order.append((pos, node.node_id))

    edges: list[TemporalEdge] = []
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            pos_a, nid_a = order[a]
            pos_b, nid_b = order[b]
            relation, conf = providers.temporal.score(nodes[nid_a], nodes[nid_b], pos_b - pos_a)
            if conf <= temporal_confidence_floor:
                continue
            if relation == BEFORE:
                edges.append(TemporalEdge(src=nid_a, dst=nid_b, confidence=conf))
            elif relation == AFTER:
                edges.append(TemporalEdge(src=nid_b, dst=nid_a, confidence=conf))

    graph = EventGraph(topic_id=topic, side="merged", nodes=nodes, edges=tuple(edges))
    return dagify(graph)


def baseline_instance_graph(
    graphs: list[EventGraph],
    include_isolated: bool,
    providers: ProviderSet,
    config: MergeConfig = MergeConfig(),
) -> EventGraph:
    """Fold-merge all per-article graphs; optionally drop isolated nodes."""
    if not graphs:
        raise ValueError("baseline needs at least one graph")
    rng = random.Random(config.rng_seed)
    merged = fold_merge(graphs, providers.coref, config, same_side_rule(rng), side="merged")
    if include_isolated:
        return merged
    connected = {e.src for e in merged.edges} | {e.dst for e in merged.edges}
    nodes = {nid: node for nid, node in merged.nodes.items() if nid in connected}
    return EventGraph(topic_id=merged.topic_id, side=merged.side, nodes=nodes, edges=merged.edges)
