"""Normalization, BLEU, top-k selection, and report aggregation.

The fixed expected values below were produced by tests/oracles.py, an
independent reimplementation; the seeded property tests compare the package
against the oracle on random corpora.
"""

import json
import random

import pytest

import oracles
from qa2nli.metrics import (
    EvalRecord,
    bleu_corpus,
    evaluate,
    exact_match,
    length_bucket,
    normalize,
    sentence_bleu,
    topk_match,
)


# -- normalization -----------------------------------------------------------


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("The  CAT sat.", "the cat sat"),
        ("Liz's dog", "lizs dog"),
        ("  on   June 5, 1944!  ", "on june 5 1944"),
        ("...", ""),
    ],
)
def test_normalize(raw, expected):
    assert normalize(raw) == expected


def test_exact_match():
    assert exact_match("The war ended in 1945.", ["the war ended in 1945"])
    assert exact_match("A", ["b", "a"])
    assert not exact_match("The war ended.", ["The war ended in 1945."])


# -- BLEU against the oracle ------------------------------------------------


@pytest.mark.parametrize(
    "name, expected",
    [
        ("perfect", 100.0),
        ("degenerate", 0.0),
        ("partial_corpus", 61.869176588627425),
        ("short_hyp", 60.653065971263345),
        ("two_refs", 84.08964152537146),
    ],
)
def test_bleu_corpus_fixed_cases(name, expected):
    hyps, refs = oracles.BLEU_CASES[name]
    assert bleu_corpus(hyps, refs) == pytest.approx(expected, abs=1e-9)


def test_bleu_corpus_input_checks():
    with pytest.raises(ValueError, match="counts differ"):
        bleu_corpus(["a"], [])
    assert bleu_corpus([], []) == 0.0
    assert bleu_corpus(["a b c d"], [[]]) == 0.0  # empty reference list
    assert bleu_corpus([""], [["a b c d"]]) == 0.0  # empty hypothesis


def test_bleu_corpus_tie_goes_to_shorter_reference():
    # refs of lengths 3 and 5 are equally far from the 4-token hypothesis;
    # choosing 3 means no brevity penalty and a perfect score.
    score = bleu_corpus(["a b c d"], [["a b c", "a b c d e"]])
    assert score == pytest.approx(100.0, abs=1e-9)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("exact_short", 100.0),
        ("near_miss", 71.18034480382984),
    ],
)
def test_sentence_bleu_fixed_cases(name, expected):
    hyp, refs = oracles.SENT_CASES[name]
    assert sentence_bleu(hyp, refs) == pytest.approx(expected, abs=1e-9)


def test_sentence_bleu_edge_cases():
    assert sentence_bleu("", ["a"]) == 0.0
    assert sentence_bleu("a", []) == 0.0
    # one-token miss: order capped at 1, add-1 smoothing gives (0+1)/(1+1)
    assert sentence_bleu("paris", ["london"]) == pytest.approx(50.0, abs=1e-9)


_WORDS = ["the", "cat", "dog", "sat", "ran", "on", "mat", "rug", "fast", "slow"]


def test_bleu_matches_oracle_on_random_corpora():
    rng = random.Random(411)
    for _ in range(50):
        n = rng.randint(1, 6)
        hyps = [" ".join(rng.choices(_WORDS, k=rng.randint(1, 12))) for _ in range(n)]
        refs = [
            [" ".join(rng.choices(_WORDS, k=rng.randint(1, 12)))
             for _ in range(rng.randint(1, 3))]
            for _ in range(n)
        ]
        assert bleu_corpus(hyps, refs) == pytest.approx(
            oracles.oracle_corpus_bleu(hyps, refs), abs=1e-9
        )
        assert sentence_bleu(hyps[0], refs[0]) == pytest.approx(
            oracles.oracle_sentence_bleu(hyps[0], refs[0]), abs=1e-9
        )


# -- top-k ----------------------------------------------------------------


def test_topk_prefers_any_exact_match():
    rate, bleu = topk_match(
        [["the cat sat on mats", "The cat sat on the mat."]],
        [["the cat sat on the mat"]],
    )
    assert rate == 100.0
    assert bleu == pytest.approx(100.0, abs=1e-9)


def test_topk_falls_back_to_best_bleu():
    rate, _ = topk_match(
        [["completely different words here", "the cat sat on the red mat"]],
        [["the cat sat on the mat"]],
    )
    assert rate == 0.0


def test_topk_validation():
    with pytest.raises(ValueError, match="counts differ"):
        topk_match([["a"]], [])
    with pytest.raises(ValueError, match="empty candidate group"):
        topk_match([[]], [["a"]])
    assert topk_match([], []) == (0.0, 0.0)


def test_topk_rate_non_decreasing_in_k():
    rng = random.Random(202)
    for _ in range(100):
        refs = [[" ".join(rng.choices(_WORDS, k=rng.randint(2, 6)))] for _ in range(5)]
        groups = []
        for ref in refs:
            cands = [" ".join(rng.choices(_WORDS, k=rng.randint(2, 6))) for _ in range(4)]
            if rng.random() < 0.5:
                cands[rng.randrange(4)] = ref[0]
            groups.append(cands)
        rates = [topk_match([g[:k] for g in groups], refs)[0] for k in (1, 2, 3, 4)]
        assert rates == sorted(rates)


# -- buckets and reports ---------------------------------------------------


@pytest.mark.parametrize(
    "n, bucket",
    [(1, "1-9"), (9, "1-9"), (10, "10-19"), (19, "10-19"), (20, "20-29"), (29, "20-29"), (30, "30+"), (45, "30+")],
)
def test_length_bucket(n, bucket):
    assert length_bucket(n) == bucket


def _records():
    return [
        EvalRecord("r1", ("the war ended in 1945.", "the war ended."),
                   ("The war ended in 1945.",), qtype="When", qa_length=8),
        EvalRecord("r2", ("liz bought bread.", "Liz bought milk."),
                   ("Liz bought milk.",), qtype="What", qa_length=8),
        EvalRecord("r3", ("sam works at the UN",), ("Sam works at the UN.",),
                   qtype="Where", qa_length=25),
    ]


def test_evaluate_report():
    report = evaluate(_records())
    assert report.n == 3
    assert report.k == 2  # longest candidate list
    assert report.exact == pytest.approx(100.0 * 2 / 3)
    assert report.topk_exact == 100.0  # r2 recovers at rank 2
    assert set(report.by_qtype) == {"What", "When", "Where"}
    assert report.by_qtype["When"]["n"] == 1
    assert list(report.by_length) == ["1-9", "20-29"]
    assert report.by_length["1-9"]["n"] == 2


def test_evaluate_k1_equals_rank1_scores():
    report = evaluate(_records(), k=1)
    assert report.k == 1
    assert report.topk_exact == report.exact


def test_evaluate_breakdowns_skip_untagged_records():
    records = [
        EvalRecord("r1", ("a b.",), ("a b.",)),
        EvalRecord("r2", ("c d.",), ("c d.",), qtype="Who", qa_length=4),
    ]
    report = evaluate(records)
    assert list(report.by_qtype) == ["Who"]
    assert report.by_qtype["Who"]["n"] == 1
    assert list(report.by_length) == ["1-9"]


def test_evaluate_validation():
    with pytest.raises(ValueError, match="k must be >= 1"):
        evaluate(_records(), k=0)
    with pytest.raises(ValueError, match="no candidates"):
        evaluate([EvalRecord("r", (), ("a",))])


def test_evaluate_empty():
    report = evaluate([])
    assert (report.n, report.k, report.exact, report.bleu) == (0, 0, 0.0, 0.0)
    assert report.by_qtype == {} and report.by_length == {}


def test_report_serialization():
    report = evaluate(_records(), k=2)
    data = report.to_dict()
    assert list(data) == [
        "n", "k", "exact_match", "bleu", "topk_exact_match", "topk_bleu",
        "by_question_type", "by_qa_length",
    ]
    text = report.to_text()
    assert "items            3" in text
    assert "top-2 match" in text
    assert "by question type:" in text
    assert json.loads(report.to_json())["n"] == 3
