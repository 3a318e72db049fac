"""Verb reinflection for undoing do-support.

When an inverted question carries a do/does/did auxiliary, the declarative
form needs the main verb re-inflected (did ... end -> ended). Irregular
forms come from a bundled TSV; everything else uses the regular -ed / -s
rules with their orthographic adjustments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Mapping

_VOWELS = "aeiou"
_SIBILANT_ENDINGS = ("s", "z", "x", "sh", "ch")


def _regular_past(lemma: str) -> str:
    if lemma.endswith("e"):
        return lemma + "d"
    if len(lemma) >= 2 and lemma.endswith("y") and lemma[-2] not in _VOWELS:
        return lemma[:-1] + "ied"
    return lemma + "ed"


def _regular_third_singular(lemma: str) -> str:
    if lemma.endswith(_SIBILANT_ENDINGS) or lemma.endswith("o"):
        return lemma + "es"
    if len(lemma) >= 2 and lemma.endswith("y") and lemma[-2] not in _VOWELS:
        return lemma[:-1] + "ies"
    return lemma + "s"


@dataclass(frozen=True)
class VerbLexicon:
    """Irregular verb forms plus regular-inflection fallbacks.

    The data file holds key<TAB>value lines ('#' comments allowed) with
    keys "past:<lemma>" and "3sg:<lemma>". Verbs that double their final
    consonant before -ed are plain data rows here; doubling depends on
    stress and cannot be decided from spelling alone.
    """

    irregular_past: Mapping[str, str] = field(default_factory=dict)
    irregular_third_singular: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def from_file(cls, path: str) -> "VerbLexicon":
        past: dict[str, str] = {}
        third: dict[str, str] = {}
        with open(path, encoding="utf-8") as fh:
            _fill_from_lines(fh, past, third, path)
        return cls(irregular_past=past, irregular_third_singular=third)

    @classmethod
    def bundled(cls) -> "VerbLexicon":
        return _bundled_lexicon()

    def past(self, lemma: str) -> str:
        lemma = lemma.lower()
        return self.irregular_past.get(lemma) or _regular_past(lemma)

    def third_singular(self, lemma: str) -> str:
        lemma = lemma.lower()
        return self.irregular_third_singular.get(
            lemma
        ) or _regular_third_singular(lemma)


def _fill_from_lines(lines, past, third, source) -> None:
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(
                f"{source}: line {line_no}: expected key<TAB>value"
            )
        key, value = parts
        if key.startswith("past:"):
            past[key[len("past:"):]] = value
        elif key.startswith("3sg:"):
            third[key[len("3sg:"):]] = value
        else:
            raise ValueError(
                f"{source}: line {line_no}: unknown key prefix {key!r}"
            )


@lru_cache(maxsize=1)
def _bundled_lexicon() -> VerbLexicon:
    past: dict[str, str] = {}
    third: dict[str, str] = {}
    data = (
        resources.files("qa2nli")
        .joinpath("data/irregular_verbs.tsv")
        .read_text(encoding="utf-8")
    )
    _fill_from_lines(data.splitlines(), past, third, "irregular_verbs.tsv")
    return VerbLexicon(irregular_past=past, irregular_third_singular=third)


def reinflect(lemma: str, aux_form: str, lexicon: VerbLexicon | None = None) -> str:
    """Inflect a verb lemma for the tense its do-support auxiliary carried.

    Args:
        lemma: lowercase verb lemma ("end", "run", "go").
        aux_form: the auxiliary surface form, one of "do", "does", "did"
            (any letter case).
        lexicon: irregular forms to consult; the bundled lexicon by default.

    Returns:
        "did" -> simple past, "does" -> third singular present,
        "do" -> the lemma unchanged.

    Raises:
        ValueError: empty lemma or an aux_form outside do/does/did.
    """
    if not lemma or not lemma.strip():
        raise ValueError("lemma must be non-empty")
    lexicon = lexicon or VerbLexicon.bundled()
    aux = aux_form.strip().lower()
    lemma = lemma.strip().lower()
    if aux == "did":
        return lexicon.past(lemma)
    if aux == "does":
        return lexicon.third_singular(lemma)
    if aux == "do":
        return lemma
    raise ValueError(f"aux_form must be one of do/does/did, got {aux_form!r}")
