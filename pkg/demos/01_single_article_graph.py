"""Induce a temporal event DAG from a single news article.

Walks the first pipeline stage: salience scoring, SVO extraction, pairwise
temporal scoring, and cycle removal, all with the deterministic fallback
providers (no neural models needed).
"""
from evgraph import ArticleRecord, InductionConfig, Side, graph_to_dot, induce_graph
from evgraph.providers import fallback_providers

article = ArticleRecord(
    id="demo-1",
    topic_id="budget-vote",
    side=Side.LEFT,
    sentences=(
        "the senate scheduled a vote on the budget",
        "lawmakers debated the budget for two days",
        "the senate passed the budget after a narrow vote",
        "the governor signed the budget into law",
        "analysts summarized the budget for reporters",
    ),
)

providers = fallback_providers(dim=256)
config = InductionConfig(top_k=4)

graph = induce_graph(article, providers, config)

print(f"article has {len(article.sentences)} sentences; top_k={config.top_k}")
print(f"induced graph: {graph.num_nodes} nodes, {graph.num_edges} edges\n")

for nid in graph.node_ids():
    node = graph.nodes[nid]
    print(f"  {nid}  salience={node.salience:.2f}  svo=({node.svo.subject!r}, {node.svo.verb!r}, {node.svo.object!r})")
    print(f"      {node.text}")

print("\nedges (confidence grows with discourse distance):")
for e in sorted(graph.edges):
    print(f"  {e.src} -> {e.dst}  conf={e.confidence:.2f}")

print("\nDOT export:\n")
print(graph_to_dot(graph))
