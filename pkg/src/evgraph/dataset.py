"""Dataset ingestion (line-delimited topic records), run configuration, splits."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field, replace

import numpy as np

from .core import ArticleRecord, Side, SvoTriple

PROVIDER_ROLES = ("embedding", "salience", "temporal", "coref", "neutralizer")


@dataclass(frozen=True)
class TopicRecord:
    """One topic's articles; at least one per side (left, right, center)."""

    topic_id: str
    articles: tuple[ArticleRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "articles", tuple(self.articles))
        sides = {a.side for a in self.articles}
        missing = [s.value for s in Side if s not in sides]
        if missing:
            raise ValueError(f"topic {self.topic_id!r} is missing sides: {missing}")
        for a in self.articles:
            if a.topic_id != self.topic_id:
                raise ValueError(f"article {a.id!r} claims topic {a.topic_id!r} inside topic {self.topic_id!r}")

    def by_side(self, side: Side) -> list[ArticleRecord]:
        return [a for a in self.articles if a.side is side]


@dataclass(frozen=True)
class RunConfig:
    """Knobs for one pipeline run; defaults follow the reference setup."""

    embedding_dim: int = 768
    top_k: int = 10
    temporal_floor: float = 0.0
    coref_threshold: float = 0.5
    match_threshold: float = 0.5
    metric_threshold: float = 0.5
    hidden: int = 64
    epochs: int = 10
    learning_rate: float = 1e-4
    seed: int = 0
    merge_seed: int = 13
    fractions: tuple[float, float, float] = (0.7, 0.1, 0.2)
    providers: dict = field(default_factory=dict)  # role -> "fallback" | "file:PATH"
    vad_lexicon: str | None = None
    background_counts: str | None = None
    output_dir: str = "out"
    workers: int = 1

    def __post_init__(self):
        if abs(sum(self.fractions) - 1.0) > 1e-9:
            raise ValueError(f"split fractions {self.fractions} must sum to 1")
        for role in self.providers:
            if role not in PROVIDER_ROLES:
                raise ValueError(f"unknown provider role {role!r} (expected one of {PROVIDER_ROLES})")

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
        if "fractions" in obj:
            obj["fractions"] = tuple(obj["fractions"])
        known = set(cls.__dataclass_fields__)
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
        return cls(**obj)

    def override(self, **kwargs) -> "RunConfig":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def _parse_article(obj: dict, topic_id: str, where: str) -> ArticleRecord:
    for key in ("id", "side", "sentences"):
        if key not in obj:
            raise ValueError(f"{where}: article is missing {key!r}")
    try:
        side = Side(obj["side"])
    except ValueError:
        raise ValueError(f"{where}: bad side {obj['side']!r} for article {obj['id']!r}") from None
    svos = None
    if obj.get("svos") is not None:
        svos = tuple(
            None if s is None else SvoTriple(s.get("s", ""), s["v"], s.get("o", ""))
            for s in obj["svos"]
        )
    embeddings = None
    if obj.get("embeddings") is not None:
        embeddings = tuple(np.asarray(v, dtype=float) for v in obj["embeddings"])
    return ArticleRecord(
        id=obj["id"],
        topic_id=topic_id,
        side=side,
        sentences=tuple(obj["sentences"]),
        salience=tuple(obj["salience"]) if obj.get("salience") is not None else None,
        embeddings=embeddings,
        svos=svos,
    )


def load_dataset(path) -> list[TopicRecord]:
    """Parse one JSON topic record per line; order follows the file."""
    topics: list[TopicRecord] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise ValueError(f"{path}:{lineno}: malformed JSON ({e.msg})") from None
            where = f"{path}:{lineno}"
            if "topic_id" not in obj or "articles" not in obj:
                raise ValueError(f"{where}: record needs 'topic_id' and 'articles'")
            topic_id = obj["topic_id"]
            articles = tuple(_parse_article(a, topic_id, where) for a in obj["articles"])
            topics.append(TopicRecord(topic_id=topic_id, articles=articles))
    return topics


def topic_to_json(topic: TopicRecord) -> dict:
    articles = []
    for a in topic.articles:
        entry: dict = {"id": a.id, "side": a.side.value, "sentences": list(a.sentences)}
        if a.salience is not None:
            entry["salience"] = list(a.salience)
        if a.embeddings is not None:
            entry["embeddings"] = [[float(x) for x in v] for v in a.embeddings]
        if a.svos is not None:
            entry["svos"] = [
                None if s is None else {"s": s.subject, "v": s.verb, "o": s.object} for s in a.svos
            ]
        articles.append(entry)
    return {"topic_id": topic.topic_id, "articles": articles}


def dump_dataset(topics: list[TopicRecord], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t in topics:
            fh.write(json.dumps(topic_to_json(t), sort_keys=True) + "\n")


def split_dataset(
    topics: list[TopicRecord], fractions: tuple[float, float, float] = (0.7, 0.1, 0.2), seed: int = 0
) -> tuple[list[TopicRecord], list[TopicRecord], list[TopicRecord]]:
    """Seeded shuffle, then contiguous split: floor(train), floor(val), rest test."""
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ValueError(f"split fractions {fractions} must sum to 1")
    shuffled = list(topics)
    random.Random(seed).shuffle(shuffled)
    n = len(shuffled)
    n_train = math.floor(n * fractions[0])
    n_val = math.floor(n * fractions[1])
    return shuffled[:n_train], shuffled[n_train : n_train + n_val], shuffled[n_train + n_val :]
