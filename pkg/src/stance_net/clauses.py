"""Sentence typing and clause splitting.

Sentences are first screened for direct/indirect speech (a reporting
verb plus quotes or a complement clause); everything else is labeled
Simple, Compound or Complex using a fixed conjunction inventory:

    cause/effect   because, as, since
    concessive     although, though
    adversative    but, yet
    coordinating   and, or
    relative       who, which, whom, that, whose

Only these lexemes ever trigger a split, and a split must leave a
finite-verb candidate (per the shipped verb list) in each clause, so a
conjunction joining mere noun phrases ("salt and pepper") leaves the
sentence Simple.
"""

from dataclasses import dataclass
from enum import Enum

from . import resources
from .corpus import Sentence, Token, is_word


class SentenceForm(Enum):
    DIRECT_SPEECH = "DirectSpeech"
    INDIRECT_SPEECH = "IndirectSpeech"
    SIMPLE = "Simple"
    COMPOUND = "Compound"
    COMPLEX = "Complex"


class ConjunctionCategory(Enum):
    CAUSE_EFFECT = "CauseEffect"
    CONCESSIVE = "Concessive"
    ADVERSATIVE = "Adversative"
    COORDINATING = "Coordinating"
    RELATIVE = "Relative"


CONJUNCTIONS: dict[str, ConjunctionCategory] = {
    "because": ConjunctionCategory.CAUSE_EFFECT,
    "as": ConjunctionCategory.CAUSE_EFFECT,
    "since": ConjunctionCategory.CAUSE_EFFECT,
    "although": ConjunctionCategory.CONCESSIVE,
    "though": ConjunctionCategory.CONCESSIVE,
    "but": ConjunctionCategory.ADVERSATIVE,
    "yet": ConjunctionCategory.ADVERSATIVE,
    "and": ConjunctionCategory.COORDINATING,
    "or": ConjunctionCategory.COORDINATING,
    "who": ConjunctionCategory.RELATIVE,
    "which": ConjunctionCategory.RELATIVE,
    "whom": ConjunctionCategory.RELATIVE,
    "that": ConjunctionCategory.RELATIVE,
    "whose": ConjunctionCategory.RELATIVE,
}


@dataclass(frozen=True)
class Conjunction:
    lexeme: str
    category: ConjunctionCategory


class ClauseRole(Enum):
    MAIN = "Main"
    SUBORDINATE = "Subordinate"
    COORDINATE = "Coordinate"


@dataclass(frozen=True)
class Clause:
    tokens: tuple[Token, ...]
    role: ClauseRole
    connective: Conjunction | None = None


@dataclass(frozen=True)
class SpeechInfo:
    form: SentenceForm
    speaker_span: tuple[Token, ...]
    content_span: tuple[Token, ...]
    reporting_clause_form: SentenceForm


@dataclass(frozen=True)
class SentenceAnalysis:
    sentence_ref: tuple[str, int]
    form: SentenceForm
    clauses: tuple[Clause, ...]
    reporting: SpeechInfo | None = None


_SPEECH_QUOTES = {'"', "“", "”"}


def _has_finite_verb(tokens: tuple[Token, ...], verbs: frozenset[str]) -> bool:
    return any(is_word(t) and t.normalized in verbs for t in tokens)


def _trim(tokens: tuple[Token, ...]) -> tuple[Token, ...]:
    lo, hi = 0, len(tokens)
    while lo < hi and not is_word(tokens[lo]):
        lo += 1
    while hi > lo and not is_word(tokens[hi - 1]):
        hi -= 1
    return tokens[lo:hi]


def _first_comma(tokens: tuple[Token, ...], start: int) -> int | None:
    for i in range(start, len(tokens)):
        if tokens[i].surface == ",":
            return i
    return None


def _try_split(
    tokens: tuple[Token, ...], index: int, conj: Conjunction, verbs: frozenset[str]
) -> tuple[SentenceForm, tuple[Clause, ...]] | None:
    """Attempt to split at one conjunction token; None when the split
    would not leave a finite verb on each side."""
    cat = conj.category
    if cat in (ConjunctionCategory.COORDINATING, ConjunctionCategory.ADVERSATIVE):
        left, right = tokens[:index], tokens[index + 1 :]
        if not (_has_finite_verb(left, verbs) and _has_finite_verb(right, verbs)):
            return None
        return SentenceForm.COMPOUND, (
            Clause(tokens=left, role=ClauseRole.COORDINATE),
            Clause(tokens=right, role=ClauseRole.COORDINATE, connective=conj),
        )
    if cat in (ConjunctionCategory.CAUSE_EFFECT, ConjunctionCategory.CONCESSIVE):
        if index == 0:
            comma = _first_comma(tokens, 1)
            if comma is None:
                return None
            sub, main = tokens[1 : comma + 1], tokens[comma + 1 :]
            if not (_has_finite_verb(sub, verbs) and _has_finite_verb(main, verbs)):
                return None
            return SentenceForm.COMPLEX, (
                Clause(tokens=sub, role=ClauseRole.SUBORDINATE, connective=conj),
                Clause(tokens=main, role=ClauseRole.MAIN),
            )
        main, sub = tokens[:index], tokens[index + 1 :]
        if not (_has_finite_verb(main, verbs) and _has_finite_verb(sub, verbs)):
            return None
        return SentenceForm.COMPLEX, (
            Clause(tokens=main, role=ClauseRole.MAIN),
            Clause(tokens=sub, role=ClauseRole.SUBORDINATE, connective=conj),
        )
    # Relative: the clause runs from the pronoun to the next comma or
    # the sentence end; anything after the comma is a resumed main span.
    if index == 0:
        return None
    main = tokens[:index]
    comma = _first_comma(tokens, index + 1)
    end = comma + 1 if comma is not None else len(tokens)
    rel = tokens[index + 1 : end]
    tail = tokens[end:]
    # The main clause may resume after the relative span ("The scheme
    # which X praised, collapsed"), so its verb check spans both parts.
    if not (_has_finite_verb(main + tail, verbs) and _has_finite_verb(rel, verbs)):
        return None
    clauses = [
        Clause(tokens=main, role=ClauseRole.MAIN),
        Clause(tokens=rel, role=ClauseRole.SUBORDINATE, connective=conj),
    ]
    if _trim(tail):
        clauses.append(Clause(tokens=tail, role=ClauseRole.MAIN))
    return SentenceForm.COMPLEX, tuple(clauses)


def _find_split(
    tokens: tuple[Token, ...], verbs: frozenset[str]
) -> tuple[SentenceForm, tuple[Clause, ...]] | None:
    for i, token in enumerate(tokens):
        category = CONJUNCTIONS.get(token.normalized) if is_word(token) else None
        if category is None:
            continue
        result = _try_split(
            tokens, i, Conjunction(lexeme=token.normalized, category=category), verbs
        )
        if result is not None:
            return result
    return None


def split_clauses(
    sentence: Sentence, connective: Conjunction, verbs: frozenset[str] | None = None
) -> tuple[Clause, ...]:
    """Split at the first occurrence of the given connective."""
    if verbs is None:
        verbs = resources.finite_verbs()
    for i, token in enumerate(sentence.tokens):
        if is_word(token) and token.normalized == connective.lexeme:
            result = _try_split(sentence.tokens, i, connective, verbs)
            if result is not None:
                return result[1]
    return (Clause(tokens=sentence.tokens, role=ClauseRole.MAIN),)


def classify_structure(
    sentence: Sentence, verbs: frozenset[str] | None = None
) -> tuple[SentenceForm, tuple[Clause, ...]]:
    """Label a non-speech sentence Simple/Compound/Complex and split it.

    The first conjunction (left to right) that yields a valid split
    wins; with no valid split the whole sentence is one Main clause.
    """
    if verbs is None:
        verbs = resources.finite_verbs()
    found = _find_split(sentence.tokens, verbs)
    if found is not None:
        return found
    return SentenceForm.SIMPLE, (
        Clause(tokens=sentence.tokens, role=ClauseRole.MAIN),
    )


def detect_speech(
    sentence: Sentence,
    reporting_verbs: frozenset[str] | None = None,
    verbs: frozenset[str] | None = None,
) -> tuple[SpeechInfo | None, list[str]]:
    """Detect direct or indirect reported speech.

    Direct needs a reporting verb outside a paired quote; indirect needs
    a reporting verb followed by "that" (within two tokens) or by a span
    containing a finite verb.  Returns (info, diagnostics); an unpaired
    quote is reported as a diagnostic and handled as if absent.
    """
    if reporting_verbs is None:
        reporting_verbs = resources.reporting_verbs()
    if verbs is None:
        verbs = resources.finite_verbs()
    tokens = sentence.tokens
    diagnostics: list[str] = []

    quote_positions = [
        i for i, t in enumerate(tokens) if t.surface in _SPEECH_QUOTES
    ]
    if len(quote_positions) == 1:
        diagnostics.append("unpaired quote; treating sentence as unquoted")
        quote_positions = []

    if quote_positions:
        first_q, last_q = quote_positions[0], quote_positions[-1]
        outside = list(range(first_q)) + list(range(last_q + 1, len(tokens)))
        verb_idx = next(
            (i for i in outside if tokens[i].normalized in reporting_verbs), None
        )
        if verb_idx is not None:
            if verb_idx < first_q:
                speaker = _trim(tokens[:verb_idx])
            else:
                speaker = _trim(tokens[verb_idx + 1 :])
            content = _trim(tokens[first_q + 1 : last_q])
            if speaker and content:
                reporting_span = tokens[:first_q] + tokens[last_q + 1 :]
                return (
                    SpeechInfo(
                        form=SentenceForm.DIRECT_SPEECH,
                        speaker_span=speaker,
                        content_span=content,
                        reporting_clause_form=_span_form(reporting_span, verbs),
                    ),
                    diagnostics,
                )
        return None, diagnostics

    verb_idx = next(
        (i for i, t in enumerate(tokens) if t.normalized in reporting_verbs), None
    )
    if verb_idx is None:
        return None, diagnostics
    speaker = _trim(tokens[:verb_idx])
    if not speaker:
        return None, diagnostics
    content_start = None
    for j in (verb_idx + 1, verb_idx + 2):
        if j < len(tokens) and tokens[j].normalized == "that":
            content_start = j + 1
            break
    if content_start is None:
        after = tokens[verb_idx + 1 :]
        if _has_finite_verb(after, verbs):
            content_start = verb_idx + 1
    if content_start is None or content_start >= len(tokens):
        return None, diagnostics
    content = _trim(tokens[content_start:])
    if not content:
        return None, diagnostics
    reporting_span = tokens[:content_start]
    return (
        SpeechInfo(
            form=SentenceForm.INDIRECT_SPEECH,
            speaker_span=speaker,
            content_span=content,
            reporting_clause_form=_span_form(reporting_span, verbs),
        ),
        diagnostics,
    )


def _span_form(tokens: tuple[Token, ...], verbs: frozenset[str]) -> SentenceForm:
    found = _find_split(tokens, verbs)
    return found[0] if found is not None else SentenceForm.SIMPLE


def analyze_sentence(
    doc_id: str,
    sentence: Sentence,
    reporting_verbs: frozenset[str] | None = None,
    verbs: frozenset[str] | None = None,
) -> tuple[SentenceAnalysis, list[str]]:
    """Full per-sentence analysis; speech screening runs first."""
    speech, diagnostics = detect_speech(sentence, reporting_verbs, verbs)
    if speech is not None:
        return (
            SentenceAnalysis(
                sentence_ref=(doc_id, sentence.index),
                form=speech.form,
                clauses=(),
                reporting=speech,
            ),
            diagnostics,
        )
    form, clause_list = classify_structure(sentence, verbs)
    return (
        SentenceAnalysis(
            sentence_ref=(doc_id, sentence.index),
            form=form,
            clauses=clause_list,
        ),
        diagnostics,
    )
