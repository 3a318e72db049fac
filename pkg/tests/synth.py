"""Deterministic synthetic multichoice corpus for scale tests.

Four question shapes (who-subject, where/when/what with do-support)
instantiated from small word pools by a seeded RNG, each example carrying a
hand-shaped dependency parse. corpus(n, seed) is pure: the same arguments
always produce the same examples, so tests built on it are reproducible
without shipping a large fixture file.
"""

from __future__ import annotations

import random

from qa2nli.conllu import DepSentence, DepToken
from qa2nli.nli import AnswerOption, QAExample

_T1_VERBS = [
    ("painted", "paint"),
    ("fixed", "fix"),
    ("moved", "move"),
    ("cleaned", "clean"),
    ("opened", "open"),
    ("repaired", "repair"),
    ("counted", "count"),
    ("stacked", "stack"),
]
_T1_NOUNS = ["fence", "radiator", "ladder", "window", "piano", "banner", "engine", "gate"]
_T1_NAMES = ["Liz", "Tom", "Maria", "Olga", "Sam", "Nina", "Paul", "Rosa"]

_T2_NAMES = ["Ana", "Boris", "Carla", "Dmitri", "Elena", "Farid", "Gwen", "Hana"]
_T2_PLACES = [
    "a bakery",
    "the museum",
    "the library",
    "the harbor",
    "a hospital",
    "the mill",
    "the station",
    "a warehouse",
]

_T3_NOUNS = ["siege", "strike", "drought", "festival", "voyage", "trial", "famine", "revolt"]
_T3_DATES = ["1204", "1925", "1984", "2003", "March", "October", "the 1950s", "Monday"]

_T4_NAMES = ["Felix", "Greta", "Hugo", "Irene", "Jonas", "Klara", "Leo", "Mira"]
_T4_THINGS = [
    "a lantern",
    "a map",
    "a canoe",
    "a rug",
    "stamps",
    "a kettle",
    "firewood",
    "a compass",
]


def _tok(i: int, form: str, lemma: str, upos: str, head: int, deprel: str) -> DepToken:
    return DepToken(id=i, form=form, lemma=lemma, upos=upos, xpos=None, head=head, deprel=deprel)


def _t1_parse(sid: str, past: str, lemma: str, noun: str) -> DepSentence:
    return DepSentence(
        tokens=(
            _tok(1, "Who", "who", "PRON", 2, "nsubj"),
            _tok(2, past, lemma, "VERB", 0, "root"),
            _tok(3, "the", "the", "DET", 4, "det"),
            _tok(4, noun, noun, "NOUN", 2, "obj"),
            _tok(5, "?", "?", "PUNCT", 2, "punct"),
        ),
        text=f"Who {past} the {noun}?",
        sent_id=sid,
    )


def _t2_parse(sid: str, name: str) -> DepSentence:
    return DepSentence(
        tokens=(
            _tok(1, "Where", "where", "ADV", 4, "advmod"),
            _tok(2, "does", "do", "AUX", 4, "aux"),
            _tok(3, name, name, "PROPN", 4, "nsubj"),
            _tok(4, "work", "work", "VERB", 0, "root"),
            _tok(5, "?", "?", "PUNCT", 4, "punct"),
        ),
        text=f"Where does {name} work?",
        sent_id=sid,
    )


def _t3_parse(sid: str, noun: str) -> DepSentence:
    return DepSentence(
        tokens=(
            _tok(1, "When", "when", "ADV", 5, "advmod"),
            _tok(2, "did", "do", "AUX", 5, "aux"),
            _tok(3, "the", "the", "DET", 4, "det"),
            _tok(4, noun, noun, "NOUN", 5, "nsubj"),
            _tok(5, "begin", "begin", "VERB", 0, "root"),
            _tok(6, "?", "?", "PUNCT", 5, "punct"),
        ),
        text=f"When did the {noun} begin?",
        sent_id=sid,
    )


def _t4_parse(sid: str, name: str) -> DepSentence:
    return DepSentence(
        tokens=(
            _tok(1, "What", "what", "PRON", 4, "obj"),
            _tok(2, "did", "do", "AUX", 4, "aux"),
            _tok(3, name, name, "PROPN", 4, "nsubj"),
            _tok(4, "buy", "buy", "VERB", 0, "root"),
            _tok(5, "?", "?", "PUNCT", 4, "punct"),
        ),
        text=f"What did {name} buy?",
        sent_id=sid,
    )


def corpus(n: int = 250, seed: int = 20260816) -> list[QAExample]:
    """Build n multichoice examples, each with four options and a parse."""
    rng = random.Random(seed)
    out: list[QAExample] = []
    for i in range(n):
        sid = f"s{i:03d}"
        shape = i % 4
        if shape == 0:
            past, lemma = rng.choice(_T1_VERBS)
            noun = rng.choice(_T1_NOUNS)
            parse = _t1_parse(sid, past, lemma, noun)
            pool = _T1_NAMES
            passage = "The neighbors all agreed that {} {} the {} last spring.".format(
                "{answer}", past, noun
            )
        elif shape == 1:
            name = rng.choice(_T2_NAMES)
            parse = _t2_parse(sid, name)
            pool = _T2_PLACES
            passage = f"{name} has worked at the same place, {{answer}}, for a decade."
        elif shape == 2:
            noun = rng.choice(_T3_NOUNS)
            parse = _t3_parse(sid, noun)
            pool = _T3_DATES
            passage = f"Historians date the start of the {noun} to {{answer}}."
        else:
            name = rng.choice(_T4_NAMES)
            parse = _t4_parse(sid, name)
            pool = _T4_THINGS
            passage = f"At the market {name} haggled briefly and bought {{answer}}."
        options = rng.sample(pool, 4)
        correct = rng.randrange(4)
        out.append(
            QAExample(
                id=sid,
                question=parse.text,
                passage=passage.format(answer=options[correct]),
                options=tuple(
                    AnswerOption(text=opt, correct=(j == correct))
                    for j, opt in enumerate(options)
                ),
                parse=parse,
            )
        )
    return out
