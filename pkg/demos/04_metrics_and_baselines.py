"""The evaluation toolkit: graph distance metrics, the arousal bias metric,
and the two comparison baselines (salience ranking, event instance graph).
"""
import pathlib
import sys

from evgraph import (
    ArticleRecord,
    Side,
    arousal_bias,
    baseline_instance_graph,
    baseline_salience_ranking,
    edge_prf,
    induce_graph,
    node_prf,
    word_salience,
)
from evgraph.lexicon import BackgroundCounts, VadLexicon
from evgraph.providers import fallback_providers

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))
from synth import TOY_VAD, make_topic  # noqa: E402

providers = fallback_providers(dim=128)
topic = make_topic(0)

graphs = {
    side: induce_graph(topic.by_side(side)[0], providers) for side in Side
}
central = graphs[Side.CENTER]

print("per-side graphs vs the center graph:")
for side in (Side.LEFT, Side.RIGHT):
    n = node_prf(graphs[side], central)
    e = edge_prf(graphs[side], central)
    b = arousal_bias(graphs[side], central, TOY_VAD)
    print(f"  {side.value:<6} node F1 {n.f1:.2f}  edge F1 {e.f1:.2f}  "
          f"arousal +{b.arousal_pos:.2f} / -{b.arousal_neg:.2f}")

print("\nword salience is tf-idf-shaped: (1+ln f)^2 * ln(N/bsf)")
for freq, bsf in [(1, 1000), (5, 50), (5, 1)]:
    print(f"  freq={freq:<2} bsf={bsf:<5} -> {word_salience(freq, 1000, bsf):7.3f}")

background = BackgroundCounts(1000, {"the": 900, "a": 850, "on": 700, "for": 650})
lr_articles = topic.by_side(Side.LEFT) + topic.by_side(Side.RIGHT)
sal_graph = baseline_salience_ranking(lr_articles, background, providers, top_k=4)
print(f"\nsalience-ranking baseline kept {sal_graph.num_nodes} of "
      f"{sum(len(a.sentences) for a in lr_articles)} concatenated sentences:")
for nid in sal_graph.node_ids():
    print(f"  {sal_graph.nodes[nid].text}")

per_article = [induce_graph(a, providers) for a in lr_articles]
with_iso = baseline_instance_graph(per_article, include_isolated=True, providers=providers)
without = baseline_instance_graph(per_article, include_isolated=False, providers=providers)
print(f"\nevent instance graph: {with_iso.num_nodes} nodes with isolated, "
      f"{without.num_nodes} without")
