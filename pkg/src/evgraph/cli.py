"""Command-line surface: induce, merge, train, prune, eval, export.

Exit codes: 0 success, 1 validation failure, 2 runtime error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import dump_graph, graph_to_dot, load_graph
from .dataset import RunConfig, load_dataset
from .induction import InductionConfig, induce_graph
from .pipeline import build_providers, eval_command, render_report, run_pipeline, train_command, write_report
from .pruning import load_checkpoint, save_checkpoint


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON run-config file")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--top-k", type=int, dest="top_k")
    parser.add_argument("--coref-threshold", type=float, dest="coref_threshold")
    parser.add_argument("--metric-threshold", type=float, dest="metric_threshold")
    parser.add_argument("--epochs", type=int)
    parser.add_argument("--lr", type=float, dest="learning_rate")
    parser.add_argument("--hidden", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument(
        "--providers",
        action="append",
        default=[],
        metavar="ROLE=SPEC",
        help="provider override, e.g. coref=fallback or embedding=file:emb.json",
    )


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    overrides = {}
    for name in ("seed", "top_k", "coref_threshold", "metric_threshold", "epochs", "learning_rate", "hidden", "workers"):
        overrides[name] = getattr(args, name, None)
    if getattr(args, "out", None):
        overrides["output_dir"] = args.out
    config = config.override(**overrides)
    if args.providers:
        merged = dict(config.providers)
        for item in args.providers:
            if "=" not in item:
                raise ValueError(f"--providers expects ROLE=SPEC, got {item!r}")
            role, spec = item.split("=", 1)
            merged[role] = spec
        config = config.override(providers=merged)
    return config


def _cmd_induce(args) -> int:
    config = _resolve_config(args)
    providers = build_providers(config)
    ind_cfg = InductionConfig(top_k=config.top_k, temporal_confidence_floor=config.temporal_floor)
    out = Path(config.output_dir)
    for topic in load_dataset(args.dataset):
        tdir = out / topic.topic_id
        tdir.mkdir(parents=True, exist_ok=True)
        for article in topic.articles:
            graph = induce_graph(article, providers, ind_cfg)
            dump_graph(graph, tdir / f"article_{article.id}.json")
    print(f"wrote per-article graphs under {out}")
    return 0


def _cmd_merge(args) -> int:
    config = _resolve_config(args)
    providers = build_providers(config)
    for topic in load_dataset(args.dataset):
        run_pipeline(topic, config, providers, out_dir=config.output_dir)
    print(f"wrote merged graphs under {config.output_dir}")
    return 0


def _cmd_train(args) -> int:
    config = _resolve_config(args)
    topics = load_dataset(args.dataset)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    model, report = train_command(topics, config)
    save_checkpoint(model, out / "model.txt")
    write_report(report, out / "train_report.json")
    print(f"checkpoint: {out / 'model.txt'}")
    print(f"final training loss: {model.loss_history[-1]:.6f}")
    return 0


def _cmd_prune(args) -> int:
    config = _resolve_config(args)
    providers = build_providers(config)
    model = load_checkpoint(args.model)
    for topic in load_dataset(args.dataset):
        run_pipeline(topic, config, providers, model=model, out_dir=config.output_dir)
    print(f"wrote pruned graphs under {config.output_dir}")
    return 0


def _cmd_eval(args) -> int:
    config = _resolve_config(args)
    topics = load_dataset(args.dataset)
    model = load_checkpoint(args.model)
    report = eval_command(topics, config, model)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_report(report, out / "eval_report.json", out / "eval_report.txt")
    print(render_report(report), end="")
    return 0


def _cmd_export(args) -> int:
    graph = load_graph(args.graph)
    dot = graph_to_dot(graph)
    if args.out:
        Path(args.out).write_text(dot, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(dot, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evgraph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("induce", help="induce one event graph per article")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(fn=_cmd_induce)

    p = sub.add_parser("merge", help="induce and merge graphs per topic")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(fn=_cmd_merge)

    p = sub.add_parser("train", help="train the node classifier on the train split")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(fn=_cmd_train)

    p = sub.add_parser("prune", help="run the full pipeline with a trained model")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(fn=_cmd_prune)

    p = sub.add_parser("eval", help="evaluate on the test split")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("export", help="export a graph JSON file to DOT")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(fn=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except Exception as e:
        print(f"runtime error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
