import math

import pytest

from evgraph.core import ArticleRecord, EventGraph, Side
from evgraph.lexicon import BackgroundCounts, VadLexicon, load_background_counts, load_vad_lexicon
from evgraph.merging import MergeConfig
from evgraph.metrics import (
    BiasScore,
    arousal_bias,
    baseline_instance_graph,
    baseline_salience_ranking,
    corpus_bias,
    edge_prf,
    node_prf,
    word_salience,
)
from evgraph.metrics import _prf_from_counts
from evgraph.providers import fallback_providers

from conftest import basis, make_graph, make_node, random_digraph


def graph_with_embeddings(prefix, vectors, edges=(), texts=None):
    embs = {f"{prefix}:{i}": v for i, v in enumerate(vectors)}
    ids = sorted(embs)
    nodes = {
        nid: make_node(nid, embedding=embs[nid], text=(texts or {}).get(nid), dim=len(vectors[0]))
        for nid in ids
    }
    from evgraph.core import TemporalEdge

    return EventGraph(topic_id="t1", side="merged", nodes=nodes,
                      edges=tuple(TemporalEdge(s, d, c) for s, d, c in edges))


class TestNodePrf:
    def test_identical_graphs(self):
        g = graph_with_embeddings("p", [basis(0, 4), basis(1, 4)])
        t = graph_with_embeddings("t", [basis(0, 4), basis(1, 4)])
        s = node_prf(g, t)
        assert (s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0)

    def test_disjoint_graphs(self):
        g = graph_with_embeddings("p", [basis(0, 4)])
        t = graph_with_embeddings("t", [basis(1, 4)])
        s = node_prf(g, t)
        assert (s.precision, s.recall, s.f1) == (0.0, 0.0, 0.0)

    def test_three_vs_two_with_two_matches(self):
        g = graph_with_embeddings("p", [basis(0, 4), basis(1, 4), basis(2, 4)])
        t = graph_with_embeddings("t", [basis(0, 4), basis(1, 4)])
        s = node_prf(g, t)
        assert s.precision == pytest.approx(2 / 3, abs=1e-9)
        assert s.recall == pytest.approx(1.0, abs=1e-9)
        assert s.f1 == pytest.approx(0.8, abs=1e-9)

    def test_both_empty_convention(self):
        empty = EventGraph(topic_id="t1", side="merged", nodes={}, edges=())
        s = node_prf(empty, empty)
        assert (s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0)

    def test_self_similarity_on_random_graphs(self, rng):
        for _ in range(30):
            g = random_digraph(rng, dim=5)
            s = node_prf(g, g)
            assert (s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0)

    def test_f1_monotone_in_true_positives(self):
        for fp in range(4):
            for fn in range(4):
                for tp in range(1, 5):
                    assert _prf_from_counts(tp + 1, fp, fn).f1 >= _prf_from_counts(tp, fp, fn).f1


class TestEdgePrf:
    def test_identical(self):
        g = graph_with_embeddings("p", [basis(0, 4), basis(1, 4)], edges=[("p:0", "p:1", 0.9)])
        t = graph_with_embeddings("t", [basis(0, 4), basis(1, 4)], edges=[("t:0", "t:1", 0.9)])
        s = edge_prf(g, t)
        assert (s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0)

    def test_direction_matters(self):
        g = graph_with_embeddings("p", [basis(0, 4), basis(1, 4)], edges=[("p:0", "p:1", 0.9)])
        t = graph_with_embeddings("t", [basis(0, 4), basis(1, 4)], edges=[("t:1", "t:0", 0.9)])
        s = edge_prf(g, t)
        assert (s.precision, s.recall, s.f1) == (0.0, 0.0, 0.0)

    def test_two_pred_one_target(self):
        g = graph_with_embeddings(
            "p", [basis(0, 4), basis(1, 4), basis(2, 4)],
            edges=[("p:0", "p:1", 0.9), ("p:0", "p:2", 0.9)],
        )
        t = graph_with_embeddings("t", [basis(0, 4), basis(1, 4)], edges=[("t:0", "t:1", 0.9)])
        s = edge_prf(g, t)
        assert s.precision == pytest.approx(0.5, abs=1e-9)
        assert s.recall == pytest.approx(1.0, abs=1e-9)
        assert s.f1 == pytest.approx(2 / 3, abs=1e-9)

    def test_both_edge_sets_empty(self):
        g = graph_with_embeddings("p", [basis(0, 4)])
        t = graph_with_embeddings("t", [basis(0, 4)])
        assert edge_prf(g, t).f1 == 1.0

    def test_edges_used_at_most_once(self):
        # two identical predicted edges can only claim the single target edge once
        g = graph_with_embeddings(
            "p", [basis(0, 4), basis(1, 4), basis(0, 4)],
            edges=[("p:0", "p:1", 0.9), ("p:2", "p:1", 0.9)],
        )
        t = graph_with_embeddings("t", [basis(0, 4), basis(1, 4)], edges=[("t:0", "t:1", 0.9)])
        s = edge_prf(g, t)
        assert s.precision == pytest.approx(0.5)


BOUNDARY_VAD = VadLexicon.from_pairs(
    {
        "slaughter": (0.1, 0.9, 0.5),
        "heroic": (0.8, 0.7, 0.5),
        "table": (0.5, 0.2, 0.5),
        "edgepos": (0.65, 0.9, 0.5),   # exactly at the positive gate: excluded
        "edgeneg": (0.35, 0.9, 0.5),   # exactly at the negative gate: excluded
    }
)


class TestArousalBias:
    def _graphs(self, pred_text, target_text):
        p = graph_with_embeddings("p", [basis(0, 4)], texts={"p:0": pred_text})
        t = graph_with_embeddings("t", [basis(0, 4)], texts={"t:0": target_text})
        return p, t

    def test_identical_texts_zero(self):
        p, t = self._graphs("same words here", "same words here")
        assert arousal_bias(p, t, BOUNDARY_VAD) == BiasScore(0.0, 0.0)

    def test_negative_token(self):
        p, t = self._graphs("a slaughter happened", "a thing happened")
        assert arousal_bias(p, t, BOUNDARY_VAD) == BiasScore(0.0, 0.9)

    def test_neutral_valence_filtered(self):
        p, t = self._graphs("heroic table", "plain words")
        assert arousal_bias(p, t, BOUNDARY_VAD) == BiasScore(0.7, 0.0)

    def test_valence_gates_are_strict(self):
        p, t = self._graphs("edgepos edgeneg", "nothing shared")
        assert arousal_bias(p, t, BOUNDARY_VAD) == BiasScore(0.0, 0.0)

    def test_subset_tokens_zero(self, rng):
        words = ["heroic", "slaughter", "table", "other"]
        for _ in range(10):
            picked = [words[i] for i in rng.permutation(4)[: int(rng.integers(1, 4))]]
            p, t = self._graphs(" ".join(picked), " ".join(words))
            assert arousal_bias(p, t, BOUNDARY_VAD) == BiasScore(0.0, 0.0)

    def test_unknown_tokens_contribute_nothing(self):
        p, t = self._graphs("unlexiconed ranting", "calm words")
        assert arousal_bias(p, t, BOUNDARY_VAD) == BiasScore(0.0, 0.0)


class TestCorpusBias:
    def test_single(self):
        assert corpus_bias([BiasScore(1.5, 0.25)]) == BiasScore(1.5, 0.25)

    def test_mean(self):
        assert corpus_bias([BiasScore(2, 4), BiasScore(4, 0)]) == BiasScore(3.0, 2.0)

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            corpus_bias([])


class TestWordSalience:
    def test_freq_one_equal_background(self):
        assert word_salience(1, 10, 10) == 0.0

    def test_natural_log_identity(self):
        assert word_salience(1, 100, 10) == pytest.approx(math.log(10), abs=1e-12)

    def test_reference_value(self):
        assert word_salience(7, 1000, 10) == pytest.approx(39.96544726184383, abs=1e-9)

    def test_preconditions(self):
        for bad in [(0, 1, 1), (1, 0, 1), (1, 1, 0)]:
            with pytest.raises(ValueError):
                word_salience(*bad)

    def test_monotonicity(self):
        for f in range(1, 10):
            assert word_salience(f + 1, 1000, 10) > word_salience(f, 1000, 10)
        for b in range(1, 9):
            assert word_salience(3, 1000, b + 1) < word_salience(3, 1000, b)


class TestSalienceRankingBaseline:
    providers = fallback_providers(dim=128)

    def _articles(self, *sentence_lists):
        sides = [Side.LEFT, Side.RIGHT, Side.CENTER]
        return [
            ArticleRecord(id=f"a{i}", topic_id="t1", side=sides[i % 3], sentences=tuple(sents))
            for i, sents in enumerate(sentence_lists)
        ]

    def test_single_sentence(self):
        g = baseline_salience_ranking(self._articles(["lone event"]), BackgroundCounts.empty(), self.providers)
        assert g.num_nodes == 1

    def test_rare_words_outrank_stopwords(self):
        background = BackgroundCounts(1000, {"the": 900, "of": 800, "a": 900})
        arts = self._articles(["the of a the", "uprising quells unrest"])
        g = baseline_salience_ranking(arts, background, self.providers, top_k=1)
        assert next(iter(g.nodes.values())).text == "uprising quells unrest"

    def test_k_saturation(self):
        g = baseline_salience_ranking(
            self._articles(["one two", "three four"]), BackgroundCounts.empty(), self.providers, top_k=99
        )
        assert g.num_nodes == 2

    def test_cross_article_edges_use_concat_order(self):
        g = baseline_salience_ranking(
            self._articles(["alpha beta"], ["gamma delta"]), BackgroundCounts.empty(), self.providers
        )
        assert g.num_edges == 1
        (e,) = g.edges
        assert e.src == "a0:0" and e.dst == "a1:0"


class TestInstanceGraphBaseline:
    providers = fallback_providers(dim=128)

    def test_disjoint_without_isolated_is_empty(self):
        a = graph_with_embeddings("a", [basis(0, 8)])
        b = graph_with_embeddings("b", [basis(1, 8)])
        g = baseline_instance_graph([a, b], include_isolated=False, providers=self.providers)
        assert g.num_nodes == 0

    def test_identical_pair_is_isomorphic_to_one(self):
        va = [basis(0, 8), basis(1, 8)]
        a = graph_with_embeddings("a", va, edges=[("a:0", "a:1", 0.8)])
        b = graph_with_embeddings("b", va, edges=[("b:0", "b:1", 0.8)])
        g = baseline_instance_graph([a, b], include_isolated=True, providers=self.providers)
        assert g.num_nodes == 2 and g.num_edges == 1

    def test_isolated_flag_toggles_degree_zero_nodes(self):
        a = graph_with_embeddings("a", [basis(0, 8), basis(1, 8)], edges=[("a:0", "a:1", 0.8)])
        b = graph_with_embeddings("b", [basis(2, 8)])
        with_iso = baseline_instance_graph([a, b], True, self.providers)
        without = baseline_instance_graph([a, b], False, self.providers)
        isolated = sum(
            1 for nid in with_iso.nodes
            if all(e.src != nid and e.dst != nid for e in with_iso.edges)
        )
        assert with_iso.num_nodes - without.num_nodes == isolated == 1


class TestLexiconFiles:
    def test_vad_round_trip(self, tmp_path):
        path = tmp_path / "vad.tsv"
        path.write_text("token\tvalence\tarousal\tdominance\nheroic\t0.9\t0.7\t0.5\nslaughter\t0.1\t0.9\t0.4\n")
        lex = load_vad_lexicon(path)
        assert len(lex) == 2
        assert lex.get("heroic").arousal == 0.7
        assert lex.is_biased("slaughter")

    def test_vad_without_header(self, tmp_path):
        path = tmp_path / "vad.tsv"
        path.write_text("calm\t0.5\t0.1\t0.5\n")
        assert not load_vad_lexicon(path).is_biased("calm")

    def test_background_round_trip(self, tmp_path):
        path = tmp_path / "bg.tsv"
        path.write_text("#N\t5000\nthe\t4000\nsenate\t40\n")
        bg = load_background_counts(path)
        assert bg.total_sentences == 5000
        assert bg.bsf("the") == 4000
        assert bg.bsf("unseen") == 1

    def test_background_requires_header(self, tmp_path):
        path = tmp_path / "bg.tsv"
        path.write_text("the\t4000\n")
        with pytest.raises(ValueError, match="#N"):
            load_background_counts(path)
