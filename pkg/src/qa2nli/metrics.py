"""Matching and BLEU scoring for declarative rewrites against references.

All comparison happens on normalized text: lowercased, punctuation removed,
whitespace collapsed. Corpus BLEU is the standard unsmoothed 4-gram score
(so one missing n-gram order zeroes it); sentence BLEU is add-1 smoothed
with the order capped at the hypothesis length, which keeps "exact match
implies 100" true for short sentences. Both are reported on a 0-100 scale.
"""

from __future__ import annotations

import json
import math
import string
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "EvalRecord",
    "EvalReport",
    "bleu_corpus",
    "evaluate",
    "exact_match",
    "length_bucket",
    "normalize",
    "sentence_bleu",
    "topk_match",
]

_PUNCT_TABLE = str.maketrans("", "", string.punctuation)
LENGTH_BUCKETS = ("1-9", "10-19", "20-29", "30+")


def normalize(text: str) -> str:
    """Lowercase, drop punctuation, collapse whitespace."""
    return " ".join(text.lower().translate(_PUNCT_TABLE).split())


def exact_match(hypothesis: str, references: Sequence[str]) -> bool:
    hyp = normalize(hypothesis)
    return any(hyp == normalize(ref) for ref in references)


def _tokens(text: str) -> list[str]:
    return normalize(text).split()


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _clipped(hyp: Sequence[str], refs: Sequence[Sequence[str]], n: int) -> tuple[int, int]:
    counts = _ngrams(hyp, n)
    if not counts:
        return 0, 0
    best: Counter = Counter()
    for ref in refs:
        for gram, c in _ngrams(ref, n).items():
            if c > best[gram]:
                best[gram] = c
    clipped = sum(min(c, best[gram]) for gram, c in counts.items())
    return clipped, sum(counts.values())


def _closest_ref_len(hyp_len: int, refs: Sequence[Sequence[str]]) -> int:
    # Ties go to the shorter reference.
    return min((len(r) for r in refs), key=lambda rl: (abs(rl - hyp_len), rl))


def bleu_corpus(hypotheses: Sequence[str], references: Sequence[Sequence[str]]) -> float:
    """Corpus-level BLEU-4, unsmoothed, 0-100.

    references[i] is the list of acceptable sentences for hypotheses[i].
    Empty input or any empty reference list scores 0.
    """
    if len(hypotheses) != len(references):
        raise ValueError("hypothesis and reference counts differ")
    if not hypotheses or any(not refs for refs in references):
        return 0.0
    hyp_tokens = [_tokens(h) for h in hypotheses]
    ref_tokens = [[_tokens(r) for r in refs] for refs in references]

    hyp_len = sum(len(h) for h in hyp_tokens)
    ref_len = sum(_closest_ref_len(len(h), rs) for h, rs in zip(hyp_tokens, ref_tokens))
    if hyp_len == 0:
        return 0.0

    log_precision = 0.0
    for n in range(1, 5):
        clipped = total = 0
        for h, rs in zip(hyp_tokens, ref_tokens):
            c, t = _clipped(h, rs, n)
            clipped += c
            total += t
        if clipped == 0 or total == 0:
            return 0.0
        log_precision += 0.25 * math.log(clipped / total)

    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return 100.0 * brevity * math.exp(log_precision)


def sentence_bleu(hypothesis: str, references: Sequence[str]) -> float:
    """Sentence-level BLEU with add-1 smoothing, 0-100.

    The maximum n-gram order is min(4, hypothesis length), so an exact
    match always scores 100 no matter how short the sentence is.
    """
    hyp = _tokens(hypothesis)
    refs = [_tokens(r) for r in references]
    if not hyp or not refs:
        return 0.0
    n_max = min(4, len(hyp))
    log_precision = 0.0
    for n in range(1, n_max + 1):
        clipped, total = _clipped(hyp, refs, n)
        log_precision += math.log((clipped + 1) / (total + 1)) / n_max
    ref_len = _closest_ref_len(len(hyp), refs)
    brevity = 1.0 if len(hyp) >= ref_len else math.exp(1.0 - ref_len / len(hyp))
    return 100.0 * brevity * math.exp(log_precision)


def topk_match(
    candidate_groups: Sequence[Sequence[str]],
    references: Sequence[Sequence[str]],
) -> tuple[float, float]:
    """Score each item by its best candidate.

    The best candidate is the lowest-ranked exact match if any, otherwise
    the candidate with the highest sentence BLEU (ties keep the lower
    rank). Returns (exact-match rate in percent, corpus BLEU of the best
    candidates).
    """
    if len(candidate_groups) != len(references):
        raise ValueError("candidate and reference counts differ")
    if not candidate_groups:
        return 0.0, 0.0
    best: list[str] = []
    matched = 0
    for cands, refs in zip(candidate_groups, references):
        if not cands:
            raise ValueError("empty candidate group")
        chosen = None
        for cand in cands:
            if exact_match(cand, refs):
                chosen = cand
                matched += 1
                break
        if chosen is None:
            chosen = max(cands, key=lambda c: sentence_bleu(c, refs))
        best.append(chosen)
    rate = 100.0 * matched / len(candidate_groups)
    return rate, bleu_corpus(best, references)


def length_bucket(n: int) -> str:
    if n < 10:
        return "1-9"
    if n < 20:
        return "10-19"
    if n < 30:
        return "20-29"
    return "30+"


@dataclass(frozen=True)
class EvalRecord:
    """One item to score: ranked candidates plus references.

    qtype and qa_length (question plus answer token count) are optional
    grouping keys for the breakdown tables.
    """

    id: str
    candidates: tuple[str, ...]
    references: tuple[str, ...]
    qtype: str | None = None
    qa_length: int | None = None


@dataclass(frozen=True)
class EvalReport:
    n: int
    k: int
    exact: float
    bleu: float
    topk_exact: float
    topk_bleu: float
    by_qtype: dict
    by_length: dict

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "exact_match": self.exact,
            "bleu": self.bleu,
            "topk_exact_match": self.topk_exact,
            "topk_bleu": self.topk_bleu,
            "by_question_type": self.by_qtype,
            "by_qa_length": self.by_length,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    def to_text(self) -> str:
        lines = [
            f"items            {self.n}",
            f"exact match      {self.exact:.2f}%",
            f"corpus BLEU      {self.bleu:.2f}",
            f"top-{self.k} match      {self.topk_exact:.2f}%",
            f"top-{self.k} BLEU       {self.topk_bleu:.2f}",
        ]
        if self.by_qtype:
            lines.append("by question type:")
            for qtype, row in self.by_qtype.items():
                lines.append(
                    f"  {qtype:<6} n={row['n']:<4} exact={row['exact_match']:.2f}% "
                    f"bleu={row['bleu']:.2f}"
                )
        if self.by_length:
            lines.append("by question+answer length:")
            for bucket, row in self.by_length.items():
                lines.append(
                    f"  {bucket:<6} n={row['n']:<4} exact={row['exact_match']:.2f}% "
                    f"bleu={row['bleu']:.2f}"
                )
        return "\n".join(lines)


def _group_stats(records: Sequence[EvalRecord]) -> dict:
    hyps = [r.candidates[0] for r in records]
    refs = [list(r.references) for r in records]
    matched = sum(1 for r in records if exact_match(r.candidates[0], r.references))
    return {
        "n": len(records),
        "exact_match": 100.0 * matched / len(records),
        "bleu": bleu_corpus(hyps, refs),
    }


def evaluate(records: Sequence[EvalRecord], k: int | None = None) -> EvalReport:
    """Aggregate scores over records.

    Rank-1 candidates drive exact match and corpus BLEU; the top-k scores
    consider the first k candidates per item (all of them when k is None).
    Records missing qtype or qa_length are left out of the corresponding
    breakdown.
    """
    if k is not None and k < 1:
        raise ValueError("k must be >= 1")
    if not records:
        return EvalReport(0, k or 0, 0.0, 0.0, 0.0, 0.0, {}, {})
    for record in records:
        if not record.candidates:
            raise ValueError(f"record {record.id!r} has no candidates")
    depth = k if k is not None else max(len(r.candidates) for r in records)

    refs = [list(r.references) for r in records]
    rank1 = [r.candidates[0] for r in records]
    matched = sum(1 for r in records if exact_match(r.candidates[0], r.references))
    exact = 100.0 * matched / len(records)
    bleu = bleu_corpus(rank1, refs)
    topk_exact, topk_bleu = topk_match([r.candidates[:depth] for r in records], refs)

    by_qtype: dict = {}
    typed = [r for r in records if r.qtype is not None]
    for qtype in sorted({r.qtype for r in typed}):
        by_qtype[qtype] = _group_stats([r for r in typed if r.qtype == qtype])

    by_length: dict = {}
    sized = [r for r in records if r.qa_length is not None]
    for bucket in LENGTH_BUCKETS:
        group = [r for r in sized if length_bucket(r.qa_length) == bucket]
        if group:
            by_length[bucket] = _group_stats(group)

    return EvalReport(
        n=len(records),
        k=depth,
        exact=exact,
        bleu=bleu,
        topk_exact=topk_exact,
        topk_bleu=topk_bleu,
        by_qtype=by_qtype,
        by_length=by_length,
    )
