"""CoNLL-U ingestion for dependency-parsed sentences.

Reads the 10-column tab-separated format: '#' lines are comments (sent_id and
text comments are captured), blank lines separate sentences. Multiword token
ranges ("3-4") and empty nodes ("3.1") are skipped, so the surviving ids of a
well-formed sentence are exactly 1..n. A sentence is accepted only if those
ids form a single tree: every head in range, exactly one head of 0, no
cycles. Anything else is rejected outright; downstream modules can therefore
assume tree shape.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ConlluFormatError, ConlluStructureError

_COLUMNS = 10
_SENT_ID_RE = re.compile(r"^#\s*sent_id\s*=\s*(.+?)\s*$")
_TEXT_RE = re.compile(r"^#\s*text\s*=\s*(.+?)\s*$")
_RANGE_ID_RE = re.compile(r"^\d+-\d+$")
_EMPTY_ID_RE = re.compile(r"^\d+\.\d+$")


@dataclass(frozen=True)
class DepToken:
    """One syntactic word of a parsed sentence.

    lemma and xpos are None when the file carried "_" in that column.
    head is 0 for the root token.
    """

    id: int
    form: str
    lemma: str | None
    upos: str
    xpos: str | None
    head: int
    deprel: str

    def __post_init__(self) -> None:
        if self.id < 1:
            raise ValueError(f"token id must be >= 1, got {self.id}")
        if self.head < 0:
            raise ValueError(f"token head must be >= 0, got {self.head}")
        if self.head == self.id:
            raise ValueError(f"token {self.id} has itself as head")
        if not self.form:
            raise ValueError(f"token {self.id} has an empty form")


@dataclass(frozen=True)
class DepSentence:
    """A dependency tree over tokens with ids 1..n.

    Tree shape (single root, acyclic, connected) is validated on
    construction; an invalid token list raises ConlluStructureError.
    """

    tokens: tuple[DepToken, ...]
    text: str | None = None
    sent_id: str | None = None

    def __post_init__(self) -> None:
        problem = _tree_problem(self.tokens)
        if problem is not None:
            raise ConlluStructureError(f"{self._name()}: {problem}")

    def _name(self) -> str:
        if self.sent_id:
            return f"sentence {self.sent_id!r}"
        if self.tokens:
            head = " ".join(t.form for t in self.tokens[:4])
            return f"sentence starting {head!r}"
        return "empty sentence"

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, token_id: int) -> DepToken:
        """Return the token with the given 1-based id."""
        if not 1 <= token_id <= len(self.tokens):
            raise ValueError(
                f"token id {token_id} out of range 1..{len(self.tokens)}"
            )
        return self.tokens[token_id - 1]

    @property
    def root(self) -> DepToken:
        """The unique token whose head is 0."""
        for tok in self.tokens:
            if tok.head == 0:
                return tok
        raise ConlluStructureError(f"{self._name()}: no root token")

    def children(self, token_id: int) -> tuple[DepToken, ...]:
        """Direct dependents of a token, in surface order."""
        if not 1 <= token_id <= len(self.tokens):
            raise ValueError(
                f"token id {token_id} out of range 1..{len(self.tokens)}"
            )
        return tuple(t for t in self.tokens if t.head == token_id)

    def subtree_ids(self, token_id: int) -> frozenset[int]:
        """Ids of the token and all its descendants."""
        out = {self.token(token_id).id}
        frontier = [token_id]
        while frontier:
            nxt = frontier.pop()
            for child in self.children(nxt):
                out.add(child.id)
                frontier.append(child.id)
        return frozenset(out)


def _tree_problem(tokens: tuple[DepToken, ...]) -> str | None:
    if not tokens:
        return "no tokens"
    n = len(tokens)
    ids = [t.id for t in tokens]
    if ids != list(range(1, n + 1)):
        return f"token ids are not exactly 1..{n}: {ids}"
    roots = [t.id for t in tokens if t.head == 0]
    if len(roots) != 1:
        return f"expected exactly one root, found heads of 0 at {roots}"
    for t in tokens:
        if t.head > n:
            return f"token {t.id} has head {t.head} beyond last id {n}"
    # Single root and one in-range parent per node: a cycle is the only way
    # left to break treehood, and it leaves its members unable to reach 0.
    for t in tokens:
        seen = {t.id}
        cur = t.head
        while cur != 0:
            if cur in seen:
                return f"cycle through token {t.id}"
            seen.add(cur)
            cur = tokens[cur - 1].head
    return None


def _parse_token_line(line: str, line_no: int) -> DepToken | None:
    cols = line.split("\t")
    if len(cols) != _COLUMNS:
        raise ConlluFormatError(
            f"expected {_COLUMNS} tab-separated columns, got {len(cols)}",
            line_no,
        )
    raw_id = cols[0]
    if _RANGE_ID_RE.match(raw_id) or _EMPTY_ID_RE.match(raw_id):
        return None  # multiword range / empty node: not a syntactic word
    if not raw_id.isdigit():
        raise ConlluFormatError(f"bad token id {raw_id!r}", line_no)
    if not cols[6].lstrip("-").isdigit():
        raise ConlluFormatError(f"bad head {cols[6]!r}", line_no)
    try:
        return DepToken(
            id=int(raw_id),
            form=cols[1],
            lemma=None if cols[2] == "_" else cols[2],
            upos=cols[3],
            xpos=None if cols[4] == "_" else cols[4],
            head=int(cols[6]),
            deprel=cols[7],
        )
    except ValueError as exc:
        raise ConlluFormatError(str(exc), line_no) from exc


def parse_conllu(text: str) -> list[DepSentence]:
    """Parse CoNLL-U text into validated sentences.

    Raises:
        ConlluFormatError: a malformed line, with its line number.
        ConlluStructureError: token ids/heads of a sentence are not a tree.
    """
    sentences: list[DepSentence] = []
    tokens: list[DepToken] = []
    sent_id: str | None = None
    sent_text: str | None = None

    def flush() -> None:
        nonlocal tokens, sent_id, sent_text
        if tokens:
            sentences.append(
                DepSentence(tokens=tuple(tokens), text=sent_text, sent_id=sent_id)
            )
        tokens = []
        sent_id = None
        sent_text = None

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            m = _SENT_ID_RE.match(line)
            if m:
                sent_id = m.group(1)
                continue
            m = _TEXT_RE.match(line)
            if m:
                sent_text = m.group(1)
            continue
        tok = _parse_token_line(line, line_no)
        if tok is not None:
            tokens.append(tok)
    flush()
    return sentences


def load_conllu(path: str) -> list[DepSentence]:
    """Parse a CoNLL-U file from disk (UTF-8)."""
    with open(path, encoding="utf-8") as fh:
        return parse_conllu(fh.read())


def index_by_sent_id(sentences: list[DepSentence]) -> dict[str, DepSentence]:
    """Map sent_id comments to sentences, for sidecar alignment.

    Sentences without a sent_id are dropped; duplicate ids are an error.
    """
    out: dict[str, DepSentence] = {}
    for sent in sentences:
        if sent.sent_id is None:
            continue
        if sent.sent_id in out:
            raise ValueError(f"duplicate sent_id {sent.sent_id!r}")
        out[sent.sent_id] = sent
    return out


def to_conllu(sentence: DepSentence) -> str:
    """Serialize a sentence back to CoNLL-U.

    Round-trips through parse_conllu to an equal DepSentence. Columns this
    module does not model (feats, deps, misc) are written as "_".
    """
    lines: list[str] = []
    if sentence.sent_id is not None:
        lines.append(f"# sent_id = {sentence.sent_id}")
    if sentence.text is not None:
        lines.append(f"# text = {sentence.text}")
    for t in sentence.tokens:
        lines.append(
            "\t".join(
                (
                    str(t.id),
                    t.form,
                    t.lemma if t.lemma is not None else "_",
                    t.upos,
                    t.xpos if t.xpos is not None else "_",
                    "_",
                    str(t.head),
                    t.deprel,
                    "_",
                    "_",
                )
            )
        )
    return "\n".join(lines) + "\n"
