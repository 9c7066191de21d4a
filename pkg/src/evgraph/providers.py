"""Scorer interfaces with deterministic fallbacks and precomputed-file backends.

The pipeline never runs a neural model in-process; every model-shaped
dependency (sentence encoder, salience scorer, temporal scorer, coreference
scorer, neutralizer) sits behind one of the small interfaces below. The
fallback implementations are pure and seed-fixed so the whole pipeline is
reproducible at desk scale; the ``File*`` implementations serve values that
were computed offline and stored in a score file.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .core import ArticleRecord, EventNode, cosine
from .lexicon import VadLexicon, tokenize

BEFORE = "before"
AFTER = "after"
EQUAL = "equal"
VAGUE = "vague"
RELATIONS = (BEFORE, AFTER, EQUAL, VAGUE)

#: Fixed key for the hashed bag-of-words embedder; never change it, or every
#: stored embedding becomes incomparable with newly computed ones.
BOW_HASH_KEY = b"evgraph-bow-v1"

SCORE_FILE_ROLES = ("embedding", "salience", "temporal", "coref", "neutralized")


class ScoreNotPrecomputedError(LookupError):
    """A file-backed provider was asked for a key it does not hold."""


# ---------------------------------------------------------------------------
# Interfaces
# ---------------------------------------------------------------------------

class EmbeddingProvider(Protocol):
    dim: int

    def embed(self, text: str) -> np.ndarray:
        """Unit-norm vector of dimension ``dim``; deterministic per text."""
        ...


class SalienceProvider(Protocol):
    def score_sentences(self, article: ArticleRecord) -> list[float]:
        """One score in [0,1] per sentence."""
        ...


class TemporalScorer(Protocol):
    def score(self, e1: EventNode, e2: EventNode, doc_order_hint: int | None) -> tuple[str, float]:
        """(relation, confidence); relation in {before, after, equal, vague}."""
        ...


class CoreferenceScorer(Protocol):
    def score(self, e1: EventNode, e2: EventNode) -> float:
        """Symmetric coreference score in [0,1]."""
        ...


class Neutralizer(Protocol):
    def neutralize(self, left_text: str, right_text: str) -> str:
        """Rewrite a coreferential left/right pair into one less-biased sentence."""
        ...


@dataclass(frozen=True)
class ProviderSet:
    """The five providers one pipeline run needs."""

    embedder: EmbeddingProvider
    salience: SalienceProvider
    temporal: TemporalScorer
    coref: CoreferenceScorer
    neutralizer: Neutralizer


# ---------------------------------------------------------------------------
# Deterministic fallbacks
# ---------------------------------------------------------------------------

class HashedBowEmbedder:
    """Hashed bag-of-words stand-in for a pretrained sentence encoder.

    Tokens are hashed into [0, dim) with a fixed keyed hash, counts
    accumulated, and the vector L2-normalized. An empty token set maps to the
    first basis vector so the unit-norm contract always holds.
    """

    def __init__(self, dim: int = 768):
        if dim < 2:
            raise ValueError("embedding dimension must be >= 2")
        self.dim = dim

    def _index(self, token: str) -> int:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8, key=BOW_HASH_KEY).digest()
        return int.from_bytes(digest, "big") % self.dim

    def embed(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=float)
        for tok in tokenize(text):
            vec[self._index(tok)] += 1.0
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            vec[0] = 1.0
            return vec
        return vec / norm


class CentralitySalienceProvider:
    """Sentence salience as embedding centrality, min-max scaled to [0,1]."""

    def __init__(self, embedder: EmbeddingProvider | None = None, dim: int = 768):
        self.embedder = embedder if embedder is not None else HashedBowEmbedder(dim)

    def score_sentences(self, article: ArticleRecord) -> list[float]:
        n = len(article.sentences)
        if n == 1:
            return [1.0]
        embs = [self.embedder.embed(s) for s in article.sentences]
        means = []
        for i in range(n):
            sims = [cosine(embs[i], embs[j]) for j in range(n) if j != i]
            means.append(sum(sims) / len(sims))
        lo, hi = min(means), max(means)
        if hi - lo == 0.0:
            return [1.0] * n
        return [(m - lo) / (hi - lo) for m in means]


class DiscourseOrderTemporalScorer:
    """Document-order heuristic: later in the article means temporally later.

    The confidence 0.5 + 0.1 * |hint| grows with discourse distance and caps
    at 1. Pairs with no shared article (hint None) are vague.
    """

    def score(self, e1: EventNode, e2: EventNode, doc_order_hint: int | None) -> tuple[str, float]:
        if doc_order_hint is None:
            return VAGUE, 0.0
        if doc_order_hint == 0:
            return EQUAL, 1.0
        conf = min(1.0, 0.5 + 0.1 * abs(doc_order_hint))
        return (BEFORE, conf) if doc_order_hint > 0 else (AFTER, conf)


class EmbeddingCorefScorer:
    """Coreference as embedding cosine, clamped to [0,1]."""

    def score(self, e1: EventNode, e2: EventNode) -> float:
        return min(1.0, max(0.0, cosine(e1.embedding, e2.embedding)))


class LowArousalNeutralizer:
    """Pick whichever input carries less arousal over its biased tokens.

    Biased tokens are the lexicon entries with valence > 0.65 or < 0.35;
    arousal is summed over token occurrences. Ties go to the left text.
    """

    def __init__(self, lexicon: VadLexicon | None = None):
        self.lexicon = lexicon if lexicon is not None else VadLexicon()

    def _biased_arousal(self, text: str) -> float:
        total = 0.0
        for tok in tokenize(text):
            if self.lexicon.is_biased(tok):
                total += self.lexicon.get(tok).arousal
        return total

    def neutralize(self, left_text: str, right_text: str) -> str:
        if self._biased_arousal(right_text) < self._biased_arousal(left_text):
            return right_text
        return left_text


class RandomChoiceNeutralizer:
    """Deterministic stand-in for 'replace the neutralizer with a random choice'.

    The pick is a keyed hash of both texts, so it is stable across runs and
    independent of call order.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed

    def neutralize(self, left_text: str, right_text: str) -> str:
        key = f"{self.seed}\x1f{left_text}\x1f{right_text}".encode("utf-8")
        bit = hashlib.blake2b(key, digest_size=1).digest()[0] & 1
        return left_text if bit == 0 else right_text


def fallback_providers(dim: int = 768, lexicon: VadLexicon | None = None) -> ProviderSet:
    embedder = HashedBowEmbedder(dim)
    return ProviderSet(
        embedder=embedder,
        salience=CentralitySalienceProvider(embedder),
        temporal=DiscourseOrderTemporalScorer(),
        coref=EmbeddingCorefScorer(),
        neutralizer=LowArousalNeutralizer(lexicon),
    )


# ---------------------------------------------------------------------------
# Score files: precomputed values from offline model runs
# ---------------------------------------------------------------------------

def _require(entry: dict, key: str, where: str):
    if key not in entry:
        raise ValueError(f"{where}: missing field {key!r}")
    return entry[key]


class FileEmbeddingProvider:
    """Embeddings precomputed per (article id, sentence index), served by text."""

    def __init__(self, entries: list[dict], where: str = "score file"):
        self.dim = None
        self._by_text: dict[str, np.ndarray] = {}
        for i, entry in enumerate(entries):
            at = f"{where}: embedding entry {i}"
            text = _require(entry, "text", at)
            vec = np.asarray(_require(entry, "vector", at), dtype=float)
            _require(entry, "article_id", at)
            _require(entry, "index", at)
            if self.dim is None:
                self.dim = int(vec.shape[0])
            elif vec.shape[0] != self.dim:
                raise ValueError(f"{at}: dimension {vec.shape[0]} != {self.dim}")
            norm = float(np.linalg.norm(vec))
            if abs(norm - 1.0) > 1e-4:
                raise ValueError(f"{at}: vector norm {norm} is not 1")
            vec = vec / norm
            prev = self._by_text.get(text)
            if prev is not None and not np.allclose(prev, vec, atol=1e-6):
                raise ValueError(f"{at}: conflicting vectors for duplicate text {text[:40]!r}")
            self._by_text[text] = vec
        if self.dim is None:
            self.dim = 0

    def embed(self, text: str) -> np.ndarray:
        vec = self._by_text.get(text)
        if vec is None:
            raise ScoreNotPrecomputedError(f"embedding not precomputed for text {text[:60]!r}")
        return vec


class FileSalienceProvider:
    def __init__(self, entries: list[dict], where: str = "score file"):
        self._scores: dict[tuple[str, int], float] = {}
        for i, entry in enumerate(entries):
            at = f"{where}: salience entry {i}"
            score = float(_require(entry, "score", at))
            if not 0.0 <= score <= 1.0:
                raise ValueError(f"{at}: score {score} outside [0,1]")
            self._scores[(_require(entry, "article_id", at), int(_require(entry, "index", at)))] = score

    def score_sentences(self, article: ArticleRecord) -> list[float]:
        out = []
        for i in range(len(article.sentences)):
            key = (article.id, i)
            if key not in self._scores:
                raise ScoreNotPrecomputedError(f"salience not precomputed for {article.id}:{i}")
            out.append(self._scores[key])
        return out


class FileTemporalScorer:
    """Ordered-pair relation lookups; a reversed key is served with the relation flipped."""

    def __init__(self, entries: list[dict], where: str = "score file"):
        self._scores: dict[tuple[str, str], tuple[str, float]] = {}
        for i, entry in enumerate(entries):
            at = f"{where}: temporal entry {i}"
            rel = _require(entry, "relation", at)
            if rel not in RELATIONS:
                raise ValueError(f"{at}: unknown relation {rel!r}")
            conf = float(_require(entry, "confidence", at))
            if not 0.0 <= conf <= 1.0:
                raise ValueError(f"{at}: confidence {conf} outside [0,1]")
            self._scores[(_require(entry, "src", at), _require(entry, "dst", at))] = (rel, conf)

    def score(self, e1: EventNode, e2: EventNode, doc_order_hint: int | None) -> tuple[str, float]:
        hit = self._scores.get((e1.node_id, e2.node_id))
        if hit is not None:
            return hit
        rev = self._scores.get((e2.node_id, e1.node_id))
        if rev is not None:
            rel, conf = rev
            flipped = {BEFORE: AFTER, AFTER: BEFORE}.get(rel, rel)
            return flipped, conf
        raise ScoreNotPrecomputedError(f"temporal relation not precomputed for {e1.node_id}|{e2.node_id}")


class FileCorefScorer:
    """Unordered-pair similarity lookups (keys stored sorted)."""

    def __init__(self, entries: list[dict], where: str = "score file"):
        self._scores: dict[tuple[str, str], float] = {}
        for i, entry in enumerate(entries):
            at = f"{where}: coref entry {i}"
            score = float(_require(entry, "score", at))
            if not 0.0 <= score <= 1.0:
                raise ValueError(f"{at}: score {score} outside [0,1]")
            a, b = _require(entry, "a", at), _require(entry, "b", at)
            self._scores[(min(a, b), max(a, b))] = score

    def score(self, e1: EventNode, e2: EventNode) -> float:
        key = (min(e1.node_id, e2.node_id), max(e1.node_id, e2.node_id))
        if key not in self._scores:
            raise ScoreNotPrecomputedError(f"coref score not precomputed for {key[0]}|{key[1]}")
        return self._scores[key]


class FileNeutralizer:
    def __init__(self, entries: list[dict], where: str = "score file"):
        self._texts: dict[tuple[str, str], str] = {}
        for i, entry in enumerate(entries):
            at = f"{where}: neutralized entry {i}"
            out = _require(entry, "text", at)
            if not out:
                raise ValueError(f"{at}: neutralized text is empty")
            self._texts[(_require(entry, "left_text", at), _require(entry, "right_text", at))] = out

    def neutralize(self, left_text: str, right_text: str) -> str:
        key = (left_text, right_text)
        if key not in self._texts:
            raise ScoreNotPrecomputedError(
                f"neutralized text not precomputed for pair ({left_text[:40]!r}, {right_text[:40]!r})"
            )
        return self._texts[key]


_FILE_PROVIDERS = {
    "embedding": FileEmbeddingProvider,
    "salience": FileSalienceProvider,
    "temporal": FileTemporalScorer,
    "coref": FileCorefScorer,
    "neutralized": FileNeutralizer,
}


def load_score_file(path):
    """Load a score file and return the matching provider instance."""
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    role = obj.get("role")
    if role not in SCORE_FILE_ROLES:
        raise ValueError(f"{path}: role {role!r} not one of {SCORE_FILE_ROLES}")
    entries = obj.get("entries")
    if not isinstance(entries, list):
        raise ValueError(f"{path}: 'entries' must be a list")
    return _FILE_PROVIDERS[role](entries, where=str(path))


def write_score_file(path, role: str, entries: list[dict]) -> None:
    """Write a score file after validating it loads cleanly."""
    if role not in SCORE_FILE_ROLES:
        raise ValueError(f"role {role!r} not one of {SCORE_FILE_ROLES}")
    _FILE_PROVIDERS[role](entries, where="pending write")  # validate first
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"role": role, "entries": entries}, fh, sort_keys=True)
        fh.write("\n")
