import numpy as np
import pytest

from evgraph.core import ArticleRecord, Side, cosine
from evgraph.lexicon import VadLexicon
from evgraph.providers import (
    AFTER,
    BEFORE,
    EQUAL,
    VAGUE,
    CentralitySalienceProvider,
    DiscourseOrderTemporalScorer,
    EmbeddingCorefScorer,
    FileEmbeddingProvider,
    HashedBowEmbedder,
    LowArousalNeutralizer,
    RandomChoiceNeutralizer,
    ScoreNotPrecomputedError,
    load_score_file,
    write_score_file,
)

from conftest import basis, make_node


def article(*sentences, id="a1", side=Side.LEFT):
    return ArticleRecord(id=id, topic_id="t1", side=side, sentences=tuple(sentences))


class TestHashedBowEmbedder:
    def test_order_invariance(self):
        e = HashedBowEmbedder(64)
        assert np.array_equal(e.embed("a b"), e.embed("b a"))

    def test_determinism(self):
        e = HashedBowEmbedder(64)
        assert np.array_equal(e.embed("the vote passed"), e.embed("the vote passed"))

    def test_shared_tokens_dominate(self):
        e = HashedBowEmbedder(256)
        q = e.embed("gun control vote")
        assert cosine(q, e.embed("gun control vote now")) > cosine(q, e.embed("hurricane landfall"))

    def test_unit_norm(self, rng):
        e = HashedBowEmbedder(32)
        for _ in range(50):
            words = [f"w{rng.integers(0, 1000)}" for _ in range(int(rng.integers(1, 12)))]
            vec = e.embed(" ".join(words))
            assert abs(np.linalg.norm(vec) - 1.0) <= 1e-6

    def test_empty_text_is_basis_vector(self):
        e = HashedBowEmbedder(16)
        assert np.array_equal(e.embed("...!!!"), basis(0, 16))

    def test_dim_too_small(self):
        with pytest.raises(ValueError):
            HashedBowEmbedder(1)


class TestCentralitySalience:
    def test_single_sentence(self):
        assert CentralitySalienceProvider(dim=32).score_sentences(article("only one")) == [1.0]

    def test_identical_sentences_equal_scores(self):
        scores = CentralitySalienceProvider(dim=32).score_sentences(article("same", "same", "same"))
        assert scores == [1.0, 1.0, 1.0]

    def test_bridging_sentence_scores_highest(self):
        # middle sentence shares one token with each neighbor, outer pair shares none:
        # centrality means are (0.25, 0.5, 0.25), min-max scaled to (0, 1, 0)
        scores = CentralitySalienceProvider(dim=512).score_sentences(
            article("alpha beta", "beta gamma", "gamma delta")
        )
        assert scores[1] == max(scores)
        assert scores == pytest.approx([0.0, 1.0, 0.0])

    def test_range(self, rng):
        provider = CentralitySalienceProvider(dim=64)
        for _ in range(20):
            sents = tuple(f"w{rng.integers(0, 9)} w{rng.integers(0, 9)}" for _ in range(int(rng.integers(2, 7))))
            scores = provider.score_sentences(article(*sents))
            assert all(0.0 <= s <= 1.0 for s in scores)
            assert len(scores) == len(sents)


class TestDiscourseOrderTemporal:
    scorer = DiscourseOrderTemporalScorer()
    n1 = make_node("x:0")
    n2 = make_node("x:1")

    @pytest.mark.parametrize(
        "hint,expected",
        [
            (1, (BEFORE, 0.6)),
            (2, (BEFORE, 0.7)),
            (0, (EQUAL, 1.0)),
            (-3, (AFTER, 0.8)),
            (9, (BEFORE, 1.0)),
            (None, (VAGUE, 0.0)),
        ],
    )
    def test_formula(self, hint, expected):
        rel, conf = self.scorer.score(self.n1, self.n2, hint)
        assert rel == expected[0]
        assert conf == pytest.approx(expected[1])


class TestEmbeddingCoref:
    def test_identical_nodes(self):
        n = make_node("a", embedding=basis(0, 8))
        assert EmbeddingCorefScorer().score(n, n) == 1.0

    def test_orthogonal(self):
        a = make_node("a", embedding=basis(0, 8))
        b = make_node("b", embedding=basis(1, 8))
        assert EmbeddingCorefScorer().score(a, b) == 0.0

    def test_equals_direct_cosine_when_nonnegative(self):
        e = HashedBowEmbedder(128)
        a = make_node("a", embedding=e.embed("alpha beta"))
        b = make_node("b", embedding=e.embed("beta gamma"))
        score = EmbeddingCorefScorer().score(a, b)
        assert 0.0 < score < 1.0
        assert score == cosine(a.embedding, b.embedding)

    def test_symmetric_exactly(self, rng):
        scorer = EmbeddingCorefScorer()
        for _ in range(50):
            a = make_node("a", embedding=rng.normal(size=8))
            b = make_node("b", embedding=rng.normal(size=8))
            assert scorer.score(a, b) == scorer.score(b, a)


TOY_VAD = VadLexicon.from_pairs(
    {
        "slaughter": (0.1, 0.9, 0.5),
        "kill": (0.2, 0.6, 0.5),
        "heroic": (0.9, 0.7, 0.5),
        "table": (0.5, 0.2, 0.5),
    }
)


class TestLowArousalNeutralizer:
    def test_picks_lower_arousal_side(self):
        n = LowArousalNeutralizer(TOY_VAD)
        assert n.neutralize("troops slaughter civilians", "troops kill civilians") == "troops kill civilians"

    def test_identical_inputs(self):
        n = LowArousalNeutralizer(TOY_VAD)
        assert n.neutralize("same text", "same text") == "same text"

    def test_tie_goes_left(self):
        n = LowArousalNeutralizer(TOY_VAD)
        assert n.neutralize("nothing scored here", "nor here either") == "nothing scored here"

    def test_neutral_valence_tokens_ignored(self):
        # "table" sits between the valence gates, so it adds no arousal
        n = LowArousalNeutralizer(TOY_VAD)
        assert n.neutralize("table table table", "plain words") == "table table table"


class TestRandomChoiceNeutralizer:
    def test_returns_one_of_the_inputs_deterministically(self):
        n = RandomChoiceNeutralizer(seed=3)
        picks = {n.neutralize("left text", f"right {i}") for i in range(20)}
        assert all(p == "left text" or p.startswith("right") for p in picks)
        assert n.neutralize("left text", "right 0") == n.neutralize("left text", "right 0")

    def test_seed_changes_picks(self):
        pairs = [(f"l{i}", f"r{i}") for i in range(32)]
        a = [RandomChoiceNeutralizer(0).neutralize(*p) for p in pairs]
        b = [RandomChoiceNeutralizer(1).neutralize(*p) for p in pairs]
        assert a != b


class TestScoreFiles:
    def test_embedding_round_trip(self, tmp_path, rng):
        e = HashedBowEmbedder(16)
        entries = [
            {"article_id": "a1", "index": i, "text": t, "vector": [float(x) for x in e.embed(t)]}
            for i, t in enumerate(["first sentence", "second one"])
        ]
        path = tmp_path / "emb.json"
        write_score_file(path, "embedding", entries)
        provider = load_score_file(path)
        assert isinstance(provider, FileEmbeddingProvider)
        assert provider.dim == 16
        for entry in entries:
            assert np.allclose(provider.embed(entry["text"]), entry["vector"], atol=1e-6)

    def test_missing_key_names_it(self, tmp_path):
        path = tmp_path / "sal.json"
        write_score_file(path, "salience", [{"article_id": "a1", "index": 0, "score": 0.5}])
        provider = load_score_file(path)
        art = article("one", "two")
        with pytest.raises(ScoreNotPrecomputedError, match="a1:1"):
            provider.score_sentences(art)

    def test_salience_lookup(self, tmp_path):
        path = tmp_path / "sal.json"
        write_score_file(
            path,
            "salience",
            [
                {"article_id": "a1", "index": 0, "score": 0.25},
                {"article_id": "a1", "index": 1, "score": 1.0},
            ],
        )
        assert load_score_file(path).score_sentences(article("one", "two")) == [0.25, 1.0]

    def test_temporal_reverse_key_flips(self, tmp_path):
        path = tmp_path / "temp.json"
        write_score_file(path, "temporal", [{"src": "a:0", "dst": "a:1", "relation": BEFORE, "confidence": 0.8}])
        scorer = load_score_file(path)
        n0, n1 = make_node("a:0"), make_node("a:1")
        assert scorer.score(n0, n1, 1) == (BEFORE, 0.8)
        assert scorer.score(n1, n0, -1) == (AFTER, 0.8)
        with pytest.raises(ScoreNotPrecomputedError, match="a:0"):
            scorer.score(n0, make_node("a:9"), 9)

    def test_coref_is_order_free(self, tmp_path):
        path = tmp_path / "coref.json"
        write_score_file(path, "coref", [{"a": "x:1", "b": "y:0", "score": 0.75}])
        scorer = load_score_file(path)
        a, b = make_node("x:1"), make_node("y:0")
        assert scorer.score(a, b) == scorer.score(b, a) == 0.75

    def test_neutralized_lookup(self, tmp_path):
        path = tmp_path / "neu.json"
        write_score_file(
            path,
            "neutralized",
            [{"left_id": "l:0", "right_id": "r:0", "left_text": "lt", "right_text": "rt", "text": "neutral"}],
        )
        n = load_score_file(path)
        assert n.neutralize("lt", "rt") == "neutral"
        with pytest.raises(ScoreNotPrecomputedError):
            n.neutralize("other", "rt")

    def test_bad_role_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"role": "mystery", "entries": []}')
        with pytest.raises(ValueError, match="role"):
            load_score_file(path)

    def test_out_of_range_score_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="outside"):
            write_score_file(tmp_path / "x.json", "coref", [{"a": "1", "b": "2", "score": 1.5}])
