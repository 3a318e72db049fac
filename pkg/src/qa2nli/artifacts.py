"""Dataset artifact probes: giveaway words, length skew, passage overlap.

A converted corpus is only useful if the label cannot be read off the
hypothesis alone. These helpers quantify the usual leaks: per-class PMI of
hypothesis words (smoothed so rare words do not dominate), hypothesis
length distributions per label, and lexical overlap between a hypothesis
and its premise.

All counts are document-level: a word occurring three times in one
hypothesis counts once. Text is normalized the same way as in metrics.
"""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .metrics import normalize

__all__ = [
    "LengthStats",
    "PmiEntry",
    "PmiTable",
    "length_histogram",
    "pmi",
    "word_overlap",
]


@dataclass(frozen=True)
class PmiEntry:
    word: str
    pmi: float
    count: int  # documents of the class containing the word
    percent: float  # count / class size * 100


@dataclass(frozen=True)
class PmiTable:
    classes: dict  # label -> tuple[PmiEntry, ...], strongest first
    k: float
    vocabulary_size: int

    def rows(self) -> list[tuple[str, int, str, float, int, float]]:
        out = []
        for label in sorted(self.classes):
            for rank, entry in enumerate(self.classes[label], start=1):
                out.append((label, rank, entry.word, entry.pmi, entry.count, entry.percent))
        return out

    def to_text(self) -> str:
        lines = [f"PMI (k={self.k:g}, vocabulary={self.vocabulary_size})"]
        for label in sorted(self.classes):
            lines.append(f"  {label}:")
            for rank, entry in enumerate(self.classes[label], start=1):
                lines.append(
                    f"    {rank}. {entry.word:<15} pmi={entry.pmi:+.4f} "
                    f"count={entry.count} ({entry.percent:.1f}%)"
                )
        return "\n".join(lines)


def pmi(
    items: Iterable[tuple[str, str]], k: float = 100.0, top_n: int = 5
) -> PmiTable:
    """Smoothed pointwise mutual information between words and labels.

    items are (text, label) pairs; occurrence is per document (0/1). For a
    word w and class c out of |C| classes, with N documents of which N_c
    carry label c:

        pmi_k(w, c) = ln( (count(w,c) + k) * N / ((count(w) + k*|C|) * N_c) )

    With k=0 this is plain document-level PMI, exactly invariant under
    duplicating the whole corpus; the default k=100 pulls rare-word
    estimates toward independence (duplication then strengthens values, as
    smoothing weighs less against the larger counts). Per class, only words
    actually occurring in that class are ranked, by (pmi desc, count desc,
    word asc), top_n kept.

    Raises:
        ValueError: fewer than two distinct labels, no items, k < 0,
            or top_n < 1.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    class_sizes: Counter = Counter()
    word_class: dict[str, Counter] = {}
    word_total: Counter = Counter()
    n_docs = 0
    for text, label in items:
        label = str(label)
        n_docs += 1
        class_sizes[label] += 1
        for word in set(normalize(text).split()):
            word_total[word] += 1
            word_class.setdefault(label, Counter())[word] += 1
    if n_docs == 0:
        raise ValueError("no items")
    if len(class_sizes) < 2:
        raise ValueError("need at least two distinct labels for PMI")

    n_classes = len(class_sizes)
    classes: dict = {}
    for label, size in class_sizes.items():
        scored = []
        for word, count in word_class.get(label, Counter()).items():
            value = math.log(
                ((count + k) * n_docs) / ((word_total[word] + k * n_classes) * size)
            )
            scored.append(PmiEntry(word, value, count, 100.0 * count / size))
        scored.sort(key=lambda e: (-e.pmi, -e.count, e.word))
        classes[label] = tuple(scored[:top_n])
    return PmiTable(classes=classes, k=k, vocabulary_size=len(word_total))


@dataclass(frozen=True)
class LengthStats:
    counts: dict  # token length -> number of documents
    mean: float
    median: float


def length_histogram(items: Iterable[tuple[str, str]]) -> dict:
    """Token-length distribution of texts per label.

    Returns {label: LengthStats}; length is the normalized token count.

    Raises:
        ValueError: no items.
    """
    lengths: dict[str, list[int]] = {}
    for text, label in items:
        lengths.setdefault(str(label), []).append(len(normalize(text).split()))
    if not lengths:
        raise ValueError("no items")
    out: dict = {}
    for label, values in lengths.items():
        out[label] = LengthStats(
            counts=dict(sorted(Counter(values).items())),
            mean=statistics.fmean(values),
            median=float(statistics.median(values)),
        )
    return out


def word_overlap(question: str, passage: str) -> float:
    """Percentage of distinct question words that also occur in the passage.

    Both sides are normalized; comparison is on word types.

    Raises:
        ValueError: the question has no words after normalization.
    """
    q_types = set(normalize(question).split())
    if not q_types:
        raise ValueError("question has no content words")
    p_types = set(normalize(passage).split())
    return 100.0 * len(q_types & p_types) / len(q_types)
