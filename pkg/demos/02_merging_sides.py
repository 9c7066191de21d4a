"""Merge per-article graphs within one side, then across sides.

Same-side merging collapses coreferential nodes to a seeded-random
representative; the cross-side merge rewrites each left/right pair with the
neutralizer (here the arousal-based fallback, which keeps the calmer phrasing).
"""
from evgraph import ArticleRecord, MergeConfig, Side, induce_graph, merge_cross, merge_side
from evgraph.lexicon import VadLexicon
from evgraph.providers import LowArousalNeutralizer, fallback_providers

lexicon = VadLexicon.from_pairs(
    {
        "slams": (0.15, 0.85, 0.5),
        "criticizes": (0.30, 0.45, 0.5),
        "heroic": (0.90, 0.70, 0.5),
    }
)
providers = fallback_providers(dim=256, lexicon=lexicon)

shared = "the committee approved the relief measure"
left_a = ArticleRecord(
    id="left-a", topic_id="relief", side=Side.LEFT,
    sentences=(shared, "the governor slams the senate delay on relief"),
)
left_b = ArticleRecord(
    id="left-b", topic_id="relief", side=Side.LEFT,
    sentences=(shared, "advocates rallied outside the capitol"),
)
right_a = ArticleRecord(
    id="right-a", topic_id="relief", side=Side.RIGHT,
    sentences=(shared, "the governor criticizes the senate delay on relief"),
)

config = MergeConfig(coref_threshold=0.5, rng_seed=13)

g_left = merge_side([induce_graph(a, providers) for a in (left_a, left_b)], providers.coref, config)
print(f"left side: {g_left.num_nodes} nodes after merging two 2-node graphs "
      f"(the shared sentence collapsed)\n")

g_right = merge_side([induce_graph(right_a, providers)], providers.coref, config)

merged = merge_cross(
    g_left, g_right, LowArousalNeutralizer(lexicon), providers.embedder, providers.coref, config
)
print(f"cross-side merge -> side={merged.side!r}, {merged.num_nodes} nodes:")
for nid in merged.node_ids():
    node = merged.nodes[nid]
    sources = sorted({a for a, _ in node.provenance})
    print(f"  [{', '.join(sources)}] {node.text}")

print("\nnote: 'slams' (arousal 0.85) lost to 'criticizes' (arousal 0.45) in the merged node")
