"""Per-article event graph induction: salience top-k, SVO, temporal edges, DAG."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import ArticleRecord, EventGraph, EventNode, SvoTriple, TemporalEdge, dagify
from .providers import AFTER, BEFORE, ProviderSet, SalienceProvider

_WORD_RE = re.compile(r"[A-Za-z0-9]+")

# Small closed lexicon for the heuristic SVO fallback. Real SVOs come
# precomputed in dataset records; this only keeps the data path alive.
DEFAULT_VERBS = frozenset("""
say says said tell tells told announce announces announced report reports reported
claim claims claimed pass passes passed vote votes voted sign signs signed
kill kills killed attack attacks attacked arrest arrests arrested charge charges charged
win wins won lose loses lost meet meets met call calls called urge urges urged
ban bans banned approve approves approved reject rejects rejected propose proposes proposed
begin begins began start starts started end ends ended block blocks blocked
demand demands demanded warn warns warned accuse accuses accused release releases released
is are was were be been has have had take takes took make makes made
""".split())


@dataclass(frozen=True)
class InductionConfig:
    top_k: int = 10
    temporal_confidence_floor: float = 0.0
    verbs: frozenset[str] = field(default=DEFAULT_VERBS)

    def __post_init__(self):
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if not 0.0 <= self.temporal_confidence_floor <= 1.0:
            raise ValueError("temporal_confidence_floor must be in [0,1]")


def select_salient(
    article: ArticleRecord, provider: SalienceProvider, k: int
) -> list[tuple[int, str, float]]:
    """Top-k sentences by salience; ties broken by document order.

    Returns (sentence index, text, salience) triples sorted by descending
    salience then ascending index.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not article.sentences:
        raise ValueError(f"article {article.id!r} has no sentences")
    scores = provider.score_sentences(article)
    if len(scores) != len(article.sentences):
        raise ValueError(
            f"salience provider returned {len(scores)} scores for {len(article.sentences)} sentences"
        )
    ranked = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    return [(i, article.sentences[i], scores[i]) for i in ranked[: min(k, len(scores))]]


def extract_svo(sentence: str, verbs: frozenset[str] = DEFAULT_VERBS) -> SvoTriple:
    """Crude SVO heuristic: first lexicon verb, nearest neighbors as arguments.

    With no verb hit, the first token becomes the verb with empty arguments;
    a token-free sentence degenerates to the raw text as the verb.
    """
    if not sentence:
        raise ValueError("cannot extract SVO from an empty sentence")
    tokens = _WORD_RE.findall(sentence)
    if not tokens:
        return SvoTriple(subject="", verb=sentence.strip(), object="")
    for i, tok in enumerate(tokens):
        if tok.lower() in verbs:
            subject = tokens[i - 1] if i > 0 else ""
            obj = tokens[i + 1] if i + 1 < len(tokens) else ""
            return SvoTriple(subject=subject, verb=tok, object=obj)
    return SvoTriple(subject="", verb=tokens[0], object="")


def svo_for_sentence(article: ArticleRecord, index: int, verbs: frozenset[str]) -> SvoTriple:
    """Precomputed SVO from the record when present, heuristic otherwise."""
    if article.svos is not None and article.svos[index] is not None:
        return article.svos[index]
    return extract_svo(article.sentences[index], verbs)


def induce_graph(
    article: ArticleRecord, providers: ProviderSet, config: InductionConfig = InductionConfig()
) -> EventGraph:
    """Build one event DAG from one article.

    The temporal scorer is queried once per unordered node pair (earlier
    sentence first, hint = index distance); before/after predictions become
    directed edges when confidence clears the floor, equal/vague are dropped,
    and the result is dagified.
    """
    salient = select_salient(article, providers.salience, config.top_k)
    nodes: dict[str, EventNode] = {}
    order: list[tuple[int, str]] = []
    for idx, text, sal in sorted(salient):
        node = EventNode(
            node_id=f"{article.id}:{idx}",
            text=text,
            svo=svo_for_sentence(article, idx, config.verbs),
            embedding=providers.embedder.embed(text),
            salience=sal,
            provenance=frozenset({(article.id, idx)}),
        )
        nodes[node.node_id] = node
        order.append((idx, node.node_id))

    edges: list[TemporalEdge] = []
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            idx_a, nid_a = order[a]
            idx_b, nid_b = order[b]
            relation, conf = providers.temporal.score(nodes[nid_a], nodes[nid_b], idx_b - idx_a)
            if conf <= config.temporal_confidence_floor:
                continue
            if relation == BEFORE:
                edges.append(TemporalEdge(src=nid_a, dst=nid_b, confidence=conf))
            elif relation == AFTER:
                edges.append(TemporalEdge(src=nid_b, dst=nid_a, confidence=conf))
            # equal/vague carry no direction and are dropped

    graph = EventGraph(topic_id=article.topic_id, side=article.side, nodes=nodes, edges=tuple(edges))
    return dagify(graph)
