"""Command-line interface.

Four subcommands cover the pipeline end to end:

    qa2d      rewrite question+answer pairs into ranked declaratives
    convert   build a labeled NLI corpus from a QA dataset
    eval      score declaratives against reference sentences
    analyze   probe a converted corpus for label giveaways

Data problems (unreadable files, schema violations, unknown ids) exit
with status 2. Examples the rewriter cannot handle are reported on
stderr as JSON lines plus a summary and do not affect the exit status.
Outputs are deterministic: rerunning a command on the same inputs gives
byte-identical files, regardless of --jobs.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, Sequence, TextIO

from .analysis import analyze
from .artifacts import length_histogram, pmi, word_overlap
from .conllu import index_by_sent_id, load_conllu
from .engine import EngineConfig, transform
from .errors import PipelineError, TransformError
from .metrics import EvalRecord, evaluate
from .nli import (
    NEGATIVE_POLICIES,
    SCHEMAS,
    SkipRecord,
    attach_parses,
    build_pairs,
    load_qa_jsonl,
)

__all__ = ["main"]


@contextlib.contextmanager
def _open_out(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))  # order-preserving


def _report_skips(skips: Sequence[SkipRecord], kept: int, noun: str) -> None:
    for skip in skips:
        print(json.dumps(skip.to_dict(), ensure_ascii=False), file=sys.stderr)
    print(f"qa2nli: {kept} {noun} written, {len(skips)} skipped", file=sys.stderr)


def _engine_config(args: argparse.Namespace) -> EngineConfig:
    return EngineConfig(
        copy_wh_phrase=args.copy_wh_phrase,
        emit_alternatives=getattr(args, "alternatives", 1),
    )


def _load_examples(args: argparse.Namespace, schema: str):
    examples = load_qa_jsonl(args.qa, schema)
    parses = index_by_sent_id(load_conllu(args.parses))
    return attach_parses(examples, parses)


def _cmd_qa2d(args: argparse.Namespace) -> int:
    examples = _load_examples(args, "span")
    config = _engine_config(args)

    def rewrite(example) -> tuple[list[dict], SkipRecord | None]:
        if example.parse is None:
            return [], SkipRecord(example.id, "parse", "no dependency parse for this id")
        try:
            analysis = analyze(example.parse)
            candidates = transform(analysis, example.options[0].text, config)
        except PipelineError as exc:
            stage = "transform" if isinstance(exc, TransformError) else "analysis"
            return [], SkipRecord(example.id, stage, str(exc))
        rows = [
            {
                "id": example.id,
                "declarative": cand.text,
                "rank": cand.rank,
                "applied_rules": list(cand.applied_rules),
            }
            for cand in candidates
        ]
        return rows, None

    results = _pmap(rewrite, examples, args.jobs)
    skips = [skip for _, skip in results if skip is not None]
    written = 0
    with _open_out(args.output) as out:
        for rows, _ in results:
            for row in rows:
                out.write(json.dumps(row, ensure_ascii=False) + "\n")
                written += 1
    _report_skips(skips, written, "declaratives")
    return 0


def _cmd_convert(args: argparse.Namespace) -> int:
    examples = _load_examples(args, args.schema)
    config = _engine_config(args)

    def one(example):
        return build_pairs(
            [example], config, negatives=args.negatives, seed=args.seed
        )

    results = _pmap(one, examples, args.jobs)
    pairs = [pair for result in results for pair in result.pairs]
    skips = [skip for result in results for skip in result.skips]

    with _open_out(args.output) as out:
        for pair in pairs:
            out.write(
                json.dumps(
                    {
                        "id": pair.id,
                        "premise": pair.premise,
                        "hypothesis": pair.hypothesis,
                        "label": pair.label.value,
                        "provenance": pair.provenance.value,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    for skip in skips:
        print(json.dumps(skip.to_dict(), ensure_ascii=False), file=sys.stderr)
    by_provenance: dict[str, int] = {}
    for pair in pairs:
        by_provenance[pair.provenance.value] = by_provenance.get(pair.provenance.value, 0) + 1
    breakdown = " ".join(f"{k}={v}" for k, v in sorted(by_provenance.items()))
    print(
        f"qa2nli: {len(pairs)} pairs written ({breakdown or 'none'}), "
        f"{len(skips)} skipped",
        file=sys.stderr,
    )
    return 0


def _read_jsonl(path: str) -> Iterator[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {line_no}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise ValueError(f"{path}: line {line_no}: expected a JSON object")
            yield line_no, obj


def _field(path: str, line_no: int, obj: dict, key: str, kind: type):
    if key not in obj:
        raise ValueError(f"{path}: line {line_no}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ValueError(f"{path}: line {line_no}: key {key!r} must be {kind.__name__}")
    return value


def _cmd_eval(args: argparse.Namespace) -> int:
    references: dict[str, dict] = {}
    for line_no, obj in _read_jsonl(args.references):
        ref_id = _field(args.references, line_no, obj, "id", str)
        refs = _field(args.references, line_no, obj, "references", list)
        if not refs or not all(isinstance(r, str) for r in refs):
            raise ValueError(
                f"{args.references}: line {line_no}: 'references' must be a "
                "non-empty list of strings"
            )
        if ref_id in references:
            raise ValueError(f"{args.references}: line {line_no}: duplicate id {ref_id!r}")
        qtype = obj.get("qtype")
        qa_length = obj.get("qa_length")
        if qtype is not None and not isinstance(qtype, str):
            raise ValueError(f"{args.references}: line {line_no}: 'qtype' must be a string")
        if qa_length is not None and (isinstance(qa_length, bool) or not isinstance(qa_length, int)):
            raise ValueError(f"{args.references}: line {line_no}: 'qa_length' must be an int")
        references[ref_id] = {"references": refs, "qtype": qtype, "qa_length": qa_length}

    order: list[str] = []
    candidates: dict[str, list[tuple[int, str]]] = {}
    for line_no, obj in _read_jsonl(args.hypotheses):
        hyp_id = _field(args.hypotheses, line_no, obj, "id", str)
        text = _field(args.hypotheses, line_no, obj, "declarative", str)
        rank = _field(args.hypotheses, line_no, obj, "rank", int)
        if hyp_id not in references:
            raise ValueError(
                f"{args.hypotheses}: line {line_no}: id {hyp_id!r} has no reference entry"
            )
        if hyp_id not in candidates:
            order.append(hyp_id)
            candidates[hyp_id] = []
        candidates[hyp_id].append((rank, text))

    records = []
    for hyp_id in order:
        ranked = tuple(text for _, text in sorted(candidates[hyp_id], key=lambda rt: rt[0]))
        ref = references[hyp_id]
        records.append(
            EvalRecord(
                id=hyp_id,
                candidates=ranked,
                references=tuple(ref["references"]),
                qtype=ref["qtype"],
                qa_length=ref["qa_length"],
            )
        )
    report = evaluate(records, k=args.k)
    with _open_out(args.output) as out:
        if args.format == "json":
            out.write(report.to_json() + "\n")
        else:
            out.write(report.to_text() + "\n")
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    rows: list[dict] = []
    for line_no, obj in _read_jsonl(args.pairs):
        rows.append(
            {
                "premise": _field(args.pairs, line_no, obj, "premise", str),
                "hypothesis": _field(args.pairs, line_no, obj, "hypothesis", str),
                "label": _field(args.pairs, line_no, obj, "label", str),
            }
        )
    if not rows:
        raise ValueError(f"{args.pairs}: no pairs")
    items = [(row["hypothesis"], row["label"]) for row in rows]
    table = pmi(items, k=args.smoothing, top_n=args.top)

    with _open_out(args.output) as out:
        if args.format == "csv":
            writer = csv.writer(out)
            writer.writerow(["label", "rank", "word", "pmi", "count", "percent"])
            for label, rank, word, value, count, percent in table.rows():
                writer.writerow([label, rank, word, f"{value:.6f}", count, f"{percent:.2f}"])
        else:
            out.write(table.to_text() + "\n")
            out.write("hypothesis length by label:\n")
            for label, stats in sorted(length_histogram(items).items()):
                out.write(
                    f"  {label}: mean={stats.mean:.2f} median={stats.median:.1f} "
                    f"histogram={stats.counts}\n"
                )
            overlaps: dict[str, list[float]] = {}
            for row in rows:
                overlaps.setdefault(row["label"], []).append(
                    word_overlap(row["hypothesis"], row["premise"])
                )
            out.write("hypothesis-premise word overlap by label:\n")
            for label, values in sorted(overlaps.items()):
                out.write(f"  {label}: mean={sum(values) / len(values):.2f}%\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qa2nli",
        description="Rule-based conversion of QA datasets into NLI corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    qa2d = sub.add_parser("qa2d", help="rewrite question+answer pairs into declaratives")
    qa2d.add_argument("--qa", required=True, help="JSONL with id/question/passage/answer")
    qa2d.add_argument("--parses", required=True, help="CoNLL-U file, sent_id matching example ids")
    qa2d.add_argument("--alternatives", type=int, default=1, help="candidates per item")
    qa2d.add_argument(
        "--copy-wh-phrase",
        action="store_true",
        help="keep residual nouns of Which/How phrases next to the answer",
    )
    qa2d.add_argument("--jobs", type=int, default=1, help="worker threads")
    qa2d.add_argument("--output", default="-", help="output file (default stdout)")
    qa2d.set_defaults(fn=_cmd_qa2d)

    convert = sub.add_parser("convert", help="build an NLI corpus from a QA dataset")
    convert.add_argument("--qa", required=True, help="JSONL dataset")
    convert.add_argument("--parses", required=True, help="CoNLL-U file, sent_id matching example ids")
    convert.add_argument("--schema", required=True, choices=SCHEMAS)
    convert.add_argument("--negatives", default="all", choices=NEGATIVE_POLICIES)
    convert.add_argument("--seed", type=int, default=0, help="seed for one-random sampling")
    convert.add_argument(
        "--copy-wh-phrase",
        action="store_true",
        help="keep residual nouns of Which/How phrases next to the answer",
    )
    convert.add_argument("--jobs", type=int, default=1, help="worker threads")
    convert.add_argument("--output", default="-", help="output file (default stdout)")
    convert.set_defaults(fn=_cmd_convert)

    ev = sub.add_parser("eval", help="score declaratives against references")
    ev.add_argument("--hypotheses", required=True, help="qa2d output JSONL")
    ev.add_argument("--references", required=True, help="JSONL with id/references[/qtype/qa_length]")
    ev.add_argument("--k", type=int, default=None, help="candidate depth for top-k scores")
    ev.add_argument("--format", default="text", choices=("text", "json"))
    ev.add_argument("--output", default="-", help="output file (default stdout)")
    ev.set_defaults(fn=_cmd_eval)

    an = sub.add_parser("analyze", help="probe an NLI corpus for label giveaways")
    an.add_argument("--pairs", required=True, help="NLI JSONL (convert output)")
    an.add_argument("--smoothing", type=float, default=100.0, help="PMI smoothing k")
    an.add_argument("--top", type=int, default=5, help="words per class")
    an.add_argument("--format", default="text", choices=("text", "csv"))
    an.add_argument("--output", default="-", help="output file (default stdout)")
    an.set_defaults(fn=_cmd_analyze)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (PipelineError, OSError, ValueError) as exc:
        print(f"qa2nli: error: {exc}", file=sys.stderr)
        return 2
