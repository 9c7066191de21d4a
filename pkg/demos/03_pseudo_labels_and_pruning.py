"""Pseudo-label a merged graph against its center graph, train the GCN, prune.

The center-leaning article acts as weak supervision: merged nodes it can be
matched to are Keep, the rest Remove. A two-layer GCN learns that decision
from node embeddings plus graph structure and then prunes unseen graphs.
"""
import numpy as np

from evgraph import NodeLabel, gcn_forward, gcn_train, normalize_adjacency, prune, pseudo_labels
from evgraph.pruning import KEEP_COL

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))
from synth import make_corpus  # noqa: E402  (reuses the synthetic corpus generator)

from evgraph.dataset import RunConfig  # noqa: E402
from evgraph.pipeline import build_providers, run_pipeline  # noqa: E402

config = RunConfig(embedding_dim=128, top_k=10, seed=3)
providers = build_providers(config)
topics = make_corpus(12)

dataset = []
for topic in topics[:10]:
    graphs = run_pipeline(topic, config, providers)
    labels = pseudo_labels(graphs.merged, graphs.central, threshold=0.5)
    dataset.append((graphs.merged, labels))

keeps = sum(1 for _, lab in dataset for v in lab.labels.values() if v is NodeLabel.KEEP)
total = sum(len(lab.labels) for _, lab in dataset)
print(f"pseudo-labels over {len(dataset)} training topics: {keeps}/{total} Keep\n")

model = gcn_train(dataset, epochs=300, learning_rate=0.5, seed=3, hidden=32)
print(f"trained GCN: loss {model.loss_history[0]:.3f} -> {model.loss_history[-1]:.4f}")

held_out = run_pipeline(topics[11], config, providers)
ids = held_out.merged.node_ids()
x = np.stack([held_out.merged.nodes[n].embedding for n in ids])
probs = gcn_forward(x, normalize_adjacency(held_out.merged), model)

print(f"\nheld-out topic {held_out.merged.topic_id}: per-node keep probability")
for i, nid in enumerate(ids):
    print(f"  p_keep={probs[i, KEEP_COL]:.3f}  {held_out.merged.nodes[nid].text}")

neutral = prune(held_out.merged, model)
print(f"\npruned {held_out.merged.num_nodes} -> {neutral.num_nodes} nodes (role={neutral.role!r}):")
for nid in neutral.node_ids():
    print(f"  {neutral.nodes[nid].text}")
