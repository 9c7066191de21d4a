"""Pipeline orchestration: per-topic staging, training, evaluation, reports."""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .core import EventGraph, Side, dump_graph
from .dataset import RunConfig, TopicRecord, split_dataset
from .induction import InductionConfig, induce_graph
from .lexicon import BackgroundCounts, VadLexicon, load_background_counts, load_vad_lexicon
from .merging import MergeConfig, merge_cross, merge_side
from .metrics import (
    BiasScore,
    PrfScore,
    arousal_bias,
    baseline_instance_graph,
    baseline_salience_ranking,
    corpus_bias,
    edge_prf,
    node_prf,
)
from .providers import (
    FileCorefScorer,
    FileEmbeddingProvider,
    FileNeutralizer,
    FileSalienceProvider,
    FileTemporalScorer,
    ProviderSet,
    RandomChoiceNeutralizer,
    fallback_providers,
    load_score_file,
)
from .pruning import GcnModel, gcn_train, prune, pseudo_labels

NODE_EDGE_SYSTEMS = (
    "left",
    "right",
    "salience_ranking",
    "instance_graph",
    "instance_graph_isolated",
    "ours",
)
AROUSAL_SYSTEMS = ("left", "right", "ours", "ours_wo_neutralizer")

_SYSTEM_LABELS = {
    "left": "Left",
    "right": "Right",
    "salience_ranking": "Salience Ranking",
    "instance_graph": "Event Instance Graph",
    "instance_graph_isolated": "w/ isolated nodes",
    "ours": "Ours",
    "ours_wo_neutralizer": "w/o Neutralizer",
}

_FILE_PROVIDER_TYPES = {
    "embedding": FileEmbeddingProvider,
    "salience": FileSalienceProvider,
    "temporal": FileTemporalScorer,
    "coref": FileCorefScorer,
    "neutralizer": FileNeutralizer,
}


class PipelineError(RuntimeError):
    """A pipeline stage failed; the message names the stage and topic."""


@dataclass(frozen=True)
class TopicGraphs:
    """All graphs one topic produces on the way to its neutral graph."""

    left: EventGraph
    right: EventGraph
    merged: EventGraph
    central: EventGraph
    neutral: EventGraph | None = None


def load_run_lexicon(config: RunConfig) -> VadLexicon:
    return load_vad_lexicon(config.vad_lexicon) if config.vad_lexicon else VadLexicon()


def build_providers(config: RunConfig) -> ProviderSet:
    """Resolve the per-role provider selection (fallback | file:PATH)."""
    defaults = fallback_providers(config.embedding_dim, load_run_lexicon(config))
    resolved = {}
    for role, default in (
        ("embedding", defaults.embedder),
        ("salience", defaults.salience),
        ("temporal", defaults.temporal),
        ("coref", defaults.coref),
        ("neutralizer", defaults.neutralizer),
    ):
        selection = config.providers.get(role, "fallback")
        if selection == "fallback":
            resolved[role] = default
        elif isinstance(selection, str) and selection.startswith("file:"):
            provider = load_score_file(selection[len("file:") :])
            if not isinstance(provider, _FILE_PROVIDER_TYPES[role]):
                raise ValueError(
                    f"provider file for role {role!r} has role "
                    f"{type(provider).__name__}, expected {_FILE_PROVIDER_TYPES[role].__name__}"
                )
            resolved[role] = provider
        else:
            raise ValueError(f"provider for {role!r} must be 'fallback' or 'file:PATH', got {selection!r}")
    return ProviderSet(
        embedder=resolved["embedding"],
        salience=resolved["salience"],
        temporal=resolved["temporal"],
        coref=resolved["coref"],
        neutralizer=resolved["neutralizer"],
    )


def _stage(stage: str, topic_id: str, fn):
    try:
        return fn()
    except Exception as e:
        raise PipelineError(f"[{stage}] topic {topic_id}: {e}") from e


def run_pipeline(
    topic: TopicRecord,
    config: RunConfig,
    providers: ProviderSet,
    model: GcnModel | None = None,
    out_dir: str | Path | None = None,
) -> TopicGraphs:
    """Induce per article, merge per side, merge across sides, optionally prune.

    With ``out_dir`` set, every produced graph is persisted as graph JSON
    under ``out_dir/<topic_id>/``.
    """
    ind_cfg = InductionConfig(top_k=config.top_k, temporal_confidence_floor=config.temporal_floor)
    merge_cfg = MergeConfig(coref_threshold=config.coref_threshold, rng_seed=config.merge_seed)

    def induce_side(side: Side) -> list[EventGraph]:
        return [induce_graph(a, providers, ind_cfg) for a in topic.by_side(side)]

    left_graphs = _stage("induce", topic.topic_id, lambda: induce_side(Side.LEFT))
    right_graphs = _stage("induce", topic.topic_id, lambda: induce_side(Side.RIGHT))
    central_graphs = _stage("induce", topic.topic_id, lambda: induce_side(Side.CENTER))

    g_left = _stage("merge_side", topic.topic_id, lambda: merge_side(left_graphs, providers.coref, merge_cfg))
    g_right = _stage("merge_side", topic.topic_id, lambda: merge_side(right_graphs, providers.coref, merge_cfg))
    g_central = _stage("merge_side", topic.topic_id, lambda: merge_side(central_graphs, providers.coref, merge_cfg))
    g_merged = _stage(
        "merge_cross",
        topic.topic_id,
        lambda: merge_cross(g_left, g_right, providers.neutralizer, providers.embedder, providers.coref, merge_cfg),
    )
    g_neutral = None
    if model is not None:
        g_neutral = _stage("prune", topic.topic_id, lambda: prune(g_merged, model))

    result = TopicGraphs(left=g_left, right=g_right, merged=g_merged, central=g_central, neutral=g_neutral)
    if out_dir is not None:
        tdir = Path(out_dir) / topic.topic_id
        tdir.mkdir(parents=True, exist_ok=True)
        for name, graph in (
            ("left", g_left),
            ("right", g_right),
            ("merged", g_merged),
            ("central", g_central),
            ("neutral", g_neutral),
        ):
            if graph is not None:
                dump_graph(graph, tdir / f"{name}.json")
    return result


def _map_topics(fn, topics: list[TopicRecord], workers: int):
    if workers <= 1 or len(topics) <= 1:
        return [fn(t) for t in topics]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, topics))


def train_command(
    topics: list[TopicRecord], config: RunConfig, out_dir: str | Path | None = None
) -> tuple[GcnModel, dict]:
    """Stages 1-2 plus pseudo-labels on the train split, then GCN training.

    Validation node F1 (pruned merged graph vs central) is reported per epoch
    but never gates training.
    """
    train, val, _ = split_dataset(topics, config.fractions, config.seed)
    if not train:
        raise ValueError("training split is empty")
    providers = build_providers(config)

    def prepared(topic: TopicRecord):
        graphs = run_pipeline(topic, config, providers, out_dir=out_dir)
        labels = pseudo_labels(graphs.merged, graphs.central, config.match_threshold)
        return graphs, labels

    train_prep = _map_topics(prepared, train, config.workers)
    val_prep = _map_topics(prepared, val, config.workers)

    val_f1: list[float] = []

    def on_epoch(epoch: int, snapshot: GcnModel) -> None:
        if not val_prep:
            return
        scores = [
            node_prf(prune(g.merged, snapshot), g.central, config.metric_threshold).f1
            for g, _ in val_prep
        ]
        val_f1.append(sum(scores) / len(scores))

    model = gcn_train(
        [(g.merged, labels) for g, labels in train_prep],
        epochs=config.epochs,
        learning_rate=config.learning_rate,
        seed=config.seed,
        hidden=config.hidden,
        epoch_callback=on_epoch,
    )
    report = {
        "train_topics": len(train),
        "val_topics": len(val),
        "epochs": config.epochs,
        "learning_rate": config.learning_rate,
        "seed": config.seed,
        "loss": list(model.loss_history),
        "val_node_f1": val_f1,
    }
    return model, report


def _mean_prf(scores: list[PrfScore]) -> dict:
    n = len(scores)
    return {
        "precision": sum(s.precision for s in scores) / n,
        "recall": sum(s.recall for s in scores) / n,
        "f1": sum(s.f1 for s in scores) / n,
    }


def eval_command(topics: list[TopicRecord], config: RunConfig, model: GcnModel) -> dict:
    """Evaluate the test split: graph distance metrics and the bias metric.

    Compares Left, Right, the salience-ranking baseline, the event instance
    graph with and without isolated nodes, and the pruned neutral graph, all
    against the central graph; arousal scores additionally cover the
    neutralizer-free ablation.
    """
    _, _, test = split_dataset(topics, config.fractions, config.seed)
    if not test:
        raise ValueError("test split is empty")
    providers = build_providers(config)
    ablated = ProviderSet(
        embedder=providers.embedder,
        salience=providers.salience,
        temporal=providers.temporal,
        coref=providers.coref,
        neutralizer=RandomChoiceNeutralizer(config.seed),
    )
    lexicon = load_run_lexicon(config)
    background = (
        load_background_counts(config.background_counts)
        if config.background_counts
        else BackgroundCounts.empty()
    )
    ind_cfg = InductionConfig(top_k=config.top_k, temporal_confidence_floor=config.temporal_floor)
    merge_cfg = MergeConfig(coref_threshold=config.coref_threshold, rng_seed=config.merge_seed)

    def eval_topic(topic: TopicRecord) -> dict:
        graphs = run_pipeline(topic, config, providers, model=model)
        lr_articles = topic.by_side(Side.LEFT) + topic.by_side(Side.RIGHT)
        per_article = [induce_graph(a, providers, ind_cfg) for a in lr_articles]
        candidates = {
            "left": graphs.left,
            "right": graphs.right,
            "salience_ranking": baseline_salience_ranking(
                lr_articles, background, providers, config.top_k, config.temporal_floor
            ),
            "instance_graph": baseline_instance_graph(per_article, False, providers, merge_cfg),
            "instance_graph_isolated": baseline_instance_graph(per_article, True, providers, merge_cfg),
            "ours": graphs.neutral,
        }
        ablated_graphs = run_pipeline(topic, config, ablated, model=model)
        arousal_candidates = {
            "left": graphs.left,
            "right": graphs.right,
            "ours": graphs.neutral,
            "ours_wo_neutralizer": ablated_graphs.neutral,
        }
        row = {"topic_id": topic.topic_id, "node": {}, "edge": {}, "arousal": {}}
        for name, g in candidates.items():
            row["node"][name] = node_prf(g, graphs.central, config.metric_threshold)
            row["edge"][name] = edge_prf(g, graphs.central, config.metric_threshold)
        for name, g in arousal_candidates.items():
            row["arousal"][name] = arousal_bias(g, graphs.central, lexicon)
        return row

    rows = _map_topics(eval_topic, test, config.workers)

    report: dict = {
        "test_topics": [t.topic_id for t in test],
        "metric_threshold": config.metric_threshold,
        "node": {},
        "edge": {},
        "arousal": {},
        "per_topic": [],
    }
    for name in NODE_EDGE_SYSTEMS:
        report["node"][name] = _mean_prf([r["node"][name] for r in rows])
        report["edge"][name] = _mean_prf([r["edge"][name] for r in rows])
    for name in AROUSAL_SYSTEMS:
        mean = corpus_bias([r["arousal"][name] for r in rows])
        report["arousal"][name] = {"arousal_pos": mean.arousal_pos, "arousal_neg": mean.arousal_neg}
    for r in rows:
        report["per_topic"].append(
            {
                "topic_id": r["topic_id"],
                "node": {k: vars(v) for k, v in r["node"].items()},
                "edge": {k: vars(v) for k, v in r["edge"].items()},
                "arousal": {k: vars(v) for k, v in r["arousal"].items()},
            }
        )
    return report


def render_report(report: dict) -> str:
    """Aligned text tables: distance metrics, then arousal. Scores shown x100."""
    lines = []
    lines.append(f"{'':<22} | {'Node-level':^29} | {'Edge-level':^29}")
    header = (
        f"{'Model':<22} | {'Precision':>9} {'Recall':>9} {'F1':>9} | "
        f"{'Precision':>9} {'Recall':>9} {'F1':>9}"
    )
    lines.append(header)
    lines.append("-" * len(header))
    for name in NODE_EDGE_SYSTEMS:
        n, e = report["node"][name], report["edge"][name]
        lines.append(
            f"{_SYSTEM_LABELS[name]:<22} | "
            f"{100 * n['precision']:>9.2f} {100 * n['recall']:>9.2f} {100 * n['f1']:>9.2f} | "
            f"{100 * e['precision']:>9.2f} {100 * e['recall']:>9.2f} {100 * e['f1']:>9.2f}"
        )
    lines.append("")
    header2 = f"{'Graph':<22} {'Arousal_pos':>12} {'Arousal_neg':>12}"
    lines.append(header2)
    lines.append("-" * len(header2))
    for name in AROUSAL_SYSTEMS:
        a = report["arousal"][name]
        lines.append(f"{_SYSTEM_LABELS[name]:<22} {a['arousal_pos']:>12.4f} {a['arousal_neg']:>12.4f}")
    return "\n".join(lines) + "\n"


def write_report(report: dict, json_path, text_path=None) -> None:
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
        fh.write("\n")
    if text_path is not None:
        with open(text_path, "w", encoding="utf-8") as fh:
            fh.write(render_report(report))
