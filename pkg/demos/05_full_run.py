"""End-to-end run on a generated corpus: train the pruner, evaluate everything.

Writes the dataset, VAD lexicon, checkpoint and reports into ./demo_out/ and
prints the evaluation tables. The CLI offers the same flow:

    evgraph train --dataset demo_out/corpus.jsonl --config demo_out/config.json --out demo_out
    evgraph eval  --dataset demo_out/corpus.jsonl --config demo_out/config.json \
                  --model demo_out/model.txt --out demo_out
"""
import json
import pathlib
import sys

from evgraph.dataset import RunConfig, dump_dataset
from evgraph.pipeline import eval_command, render_report, train_command, write_report
from evgraph.pruning import save_checkpoint

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))
from synth import make_corpus, vad_lexicon_file  # noqa: E402

out = pathlib.Path(__file__).resolve().parent / "demo_out"
out.mkdir(exist_ok=True)

corpus = make_corpus(30)
dump_dataset(corpus, out / "corpus.jsonl")
vad_lexicon_file(out / "vad.tsv")

config = RunConfig(
    embedding_dim=128, top_k=10, epochs=300, learning_rate=0.5, hidden=32,
    seed=3, vad_lexicon=str(out / "vad.tsv"),
)
(out / "config.json").write_text(json.dumps({
    "embedding_dim": config.embedding_dim, "top_k": config.top_k, "epochs": config.epochs,
    "learning_rate": config.learning_rate, "hidden": config.hidden, "seed": config.seed,
    "vad_lexicon": config.vad_lexicon,
}, indent=2))

print(f"corpus: {len(corpus)} topics -> {out / 'corpus.jsonl'}")

model, train_report = train_command(corpus, config)
save_checkpoint(model, out / "model.txt")
print(f"trained {config.epochs} epochs; loss {train_report['loss'][0]:.3f} -> {train_report['loss'][-1]:.4f}")
print(f"validation node F1 per epoch (last 5): "
      f"{[round(v, 3) for v in train_report['val_node_f1'][-5:]]}")

report = eval_command(corpus, config, model)
write_report(report, out / "eval_report.json", out / "eval_report.txt")
print(f"\nreports in {out}\n")
print(render_report(report))
