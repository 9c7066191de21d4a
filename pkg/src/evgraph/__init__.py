"""evgraph: neutral event-graph induction from side-labeled news articles.

The pipeline induces one temporal event DAG per article, merges graphs within
and across political sides via coreference matching (rewriting cross-side
pairs with a neutralizer), and prunes framing-biased nodes with a small GCN
trained on pseudo-labels derived from center-leaning articles.
"""
from .core import (
    ArticleRecord,
    EventGraph,
    EventNode,
    Side,
    SvoTriple,
    TemporalEdge,
    cosine,
    dagify,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
)
from .dataset import RunConfig, TopicRecord, load_dataset, split_dataset
from .induction import InductionConfig, extract_svo, induce_graph, select_salient
from .lexicon import BackgroundCounts, VadLexicon, load_background_counts, load_vad_lexicon
from .merging import Matching, MergeConfig, match_nodes, merge_cross, merge_pair, merge_side
from .metrics import (
    BiasScore,
    PrfScore,
    arousal_bias,
    baseline_instance_graph,
    baseline_salience_ranking,
    corpus_bias,
    edge_prf,
    node_prf,
    word_salience,
)
from .pipeline import TopicGraphs, build_providers, eval_command, run_pipeline, train_command
from .providers import ProviderSet, fallback_providers, load_score_file, write_score_file
from .pruning import (
    GcnModel,
    NodeLabel,
    PseudoLabels,
    gcn_forward,
    gcn_train,
    load_checkpoint,
    mlp_forward,
    normalize_adjacency,
    prune,
    pseudo_labels,
    save_checkpoint,
)

__version__ = "0.1.0"
