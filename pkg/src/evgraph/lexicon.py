"""VAD lexicon and background-frequency tables (tab-separated files)."""
from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN_RE = re.compile(r"[a-z0-9]+")

# Valence gates for "biased" tokens; strict inequalities.
VALENCE_POS = 0.65
VALENCE_NEG = 0.35


def tokenize(text: str) -> list[str]:
    """Lowercase alphanumeric tokens, split on everything else."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class VadEntry:
    valence: float
    arousal: float
    dominance: float


class VadLexicon:
    """token -> (valence, arousal, dominance), all in [0,1].

    Dominance is carried for completeness but feeds no score.
    """

    def __init__(self, entries: dict[str, VadEntry] | None = None):
        self._entries = dict(entries or {})
        for tok, e in self._entries.items():
            for name, v in (("valence", e.valence), ("arousal", e.arousal), ("dominance", e.dominance)):
                if not 0.0 <= v <= 1.0:
                    raise ValueError(f"lexicon token {tok!r}: {name} {v} outside [0,1]")

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, token: str) -> bool:
        return token in self._entries

    def get(self, token: str) -> VadEntry | None:
        return self._entries.get(token)

    def is_biased(self, token: str) -> bool:
        """Positive (v > 0.65) or negative (v < 0.35) valence; strict."""
        e = self._entries.get(token)
        if e is None:
            return False
        return e.valence > VALENCE_POS or e.valence < VALENCE_NEG

    @classmethod
    def from_pairs(cls, pairs: dict[str, tuple[float, float, float]]) -> "VadLexicon":
        return cls({tok: VadEntry(*vad) for tok, vad in pairs.items()})


def load_vad_lexicon(path) -> VadLexicon:
    """Parse ``token<TAB>valence<TAB>arousal<TAB>dominance``; header line optional."""
    entries: dict[str, VadEntry] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 tab-separated fields, got {len(parts)}")
            tok, v, a, d = parts
            if lineno == 1:
                try:
                    float(v)
                except ValueError:
                    continue  # header line
            entries[tok.lower()] = VadEntry(float(v), float(a), float(d))
    return VadLexicon(entries)


class BackgroundCounts:
    """Word -> background sentence frequency, plus the corpus sentence total N.

    Words absent from the table use bsf = 1.
    """

    def __init__(self, total_sentences: int, counts: dict[str, int] | None = None):
        if total_sentences < 1:
            raise ValueError("background corpus must contain at least one sentence")
        self.total_sentences = int(total_sentences)
        self._counts = dict(counts or {})

    def bsf(self, token: str) -> int:
        return max(1, self._counts.get(token, 1))

    @classmethod
    def empty(cls) -> "BackgroundCounts":
        return cls(total_sentences=1)


def load_background_counts(path) -> BackgroundCounts:
    """Parse ``token<TAB>count`` lines preceded by a ``#N<TAB><total>`` header."""
    total = None
    counts: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#N\t"):
                total = int(line.split("\t")[1])
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected token<TAB>count")
            counts[parts[0].lower()] = int(parts[1])
    if total is None:
        raise ValueError(f"{path}: missing '#N<TAB><total sentences>' header line")
    return BackgroundCounts(total, counts)
