"""Pass I: mine signed polarity assertions from article sentences.

Each sentence contributes through exactly one rule.  Reported speech is
checked first (the speaker's stance toward what the content mentions);
otherwise the sentence's designated clause(s) under the conjunction
rules are scored, and a clause asserts the relation between its first
two distinct mentions with the clause's polarity as the sign.

Rule tags: Simple, Conj1 (cause/effect), Conj2 (concessive), Conj3
(adversative), Conj4 (coordinating), Conj5 (relative), Direct, Indirect.
Every assertion carries unit weight; weighting happens at aggregation.
"""

from dataclasses import dataclass, field

from . import resources
from .clauses import (
    ClauseRole,
    ConjunctionCategory,
    SentenceAnalysis,
    SentenceForm,
    analyze_sentence,
)
from .corpus import Document, Token, is_word
from .errors import InputError
from .sentiment import Lexicon, Polarity, clause_polarity, semantic_orientation
from .targets import TargetSet

EVENT = "EVENT"

RULE_TAGS = ("Simple", "Conj1", "Conj2", "Conj3", "Conj4", "Conj5", "Direct", "Indirect")

_CATEGORY_TAG = {
    ConjunctionCategory.CAUSE_EFFECT: "Conj1",
    ConjunctionCategory.CONCESSIVE: "Conj2",
    ConjunctionCategory.ADVERSATIVE: "Conj3",
    ConjunctionCategory.COORDINATING: "Conj4",
    ConjunctionCategory.RELATIVE: "Conj5",
}


@dataclass(frozen=True)
class TargetMention:
    target_or_event: str
    span: tuple[int, int]  # (start token index, length)
    matched_surface: str


@dataclass(frozen=True)
class PolarityAssertion:
    from_ref: str
    to_ref: str
    sign: int  # +1 or -1, never 0
    doc: str
    sentence: int
    rule: str

    def to_record(self) -> dict:
        return {
            "from": self.from_ref,
            "to": self.to_ref,
            "sign": self.sign,
            "doc": self.doc,
            "sentence": self.sentence,
            "rule": self.rule,
        }


def assertion_from_record(record: dict) -> PolarityAssertion:
    try:
        sign = int(record["sign"])
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        return PolarityAssertion(
            from_ref=str(record["from"]),
            to_ref=str(record["to"]),
            sign=sign,
            doc=str(record["doc"]),
            sentence=int(record["sentence"]),
            rule=str(record["rule"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed assertion record: {exc}") from exc


@dataclass
class Pass1Stats:
    sentences: int = 0
    emitted: int = 0
    rule_counts: dict = field(default_factory=dict)
    no_mention_sentences: int = 0
    skipped_questions: int = 0
    diagnostics: list = field(default_factory=list)


class MentionIndex:
    """Surface-sequence lookup for targets plus the event aliases.

    Precedence on identical word sequences: event aliases beat targets,
    key players beat key phrases (a name is the more specific reading).
    """

    def __init__(self, targets: TargetSet, event_aliases: set[str] | frozenset[str]):
        index = {
            words: target.id for words, target in targets.surface_index().items()
        }
        for alias in event_aliases:
            words = tuple(alias.lower().split())
            if words:
                index[words] = EVENT
        self._index = index
        self._max_len = max((len(w) for w in index), default=0)

    def find_mentions(self, tokens: tuple[Token, ...]) -> list[TargetMention]:
        """Greedy leftmost-longest scan over contiguous word tokens."""
        mentions: list[TargetMention] = []
        i = 0
        n = len(tokens)
        while i < n:
            if not is_word(tokens[i]):
                i += 1
                continue
            match = None
            limit = min(self._max_len, n - i)
            for length in range(limit, 0, -1):
                window = tokens[i : i + length]
                if any(not is_word(t) for t in window):
                    continue
                words = tuple(t.normalized for t in window)
                ref = self._index.get(words)
                if ref is not None:
                    match = TargetMention(
                        target_or_event=ref,
                        span=(i, length),
                        matched_surface=" ".join(words),
                    )
                    break
            if match is None:
                i += 1
            else:
                mentions.append(match)
                i += match.span[1]
        return mentions


def find_mentions(
    tokens: tuple[Token, ...], targets: TargetSet, event_aliases: set[str]
) -> list[TargetMention]:
    return MentionIndex(targets, event_aliases).find_mentions(tokens)


def _first_distinct_pair(
    mentions: list[TargetMention],
) -> tuple[TargetMention, TargetMention] | None:
    if not mentions:
        return None
    subject = mentions[0]
    for other in mentions[1:]:
        if other.target_or_event != subject.target_or_event:
            return subject, other
    return None


def assert_from_simple(
    clause_tokens: tuple[Token, ...],
    index: MentionIndex,
    lexicon: Lexicon,
    doc: str,
    sentence: int,
    rule: str,
) -> PolarityAssertion | None:
    """Relate the first two distinct mentions with the clause polarity."""
    pair = _first_distinct_pair(index.find_mentions(clause_tokens))
    if pair is None:
        return None
    subject, obj = pair
    polarity = clause_polarity(list(clause_tokens), lexicon)
    if polarity is Polarity.NEUTRAL:
        return None
    return PolarityAssertion(
        from_ref=subject.target_or_event,
        to_ref=obj.target_or_event,
        sign=polarity.sign,
        doc=doc,
        sentence=sentence,
        rule=rule,
    )


def _designated_spans(analysis: SentenceAnalysis) -> tuple[str, list[tuple[Token, ...]]] | None:
    """Clause span(s) the connective's rule designates, with the tag."""
    connective = next(
        (c.connective for c in analysis.clauses if c.connective is not None), None
    )
    if connective is None:
        return None
    tag = _CATEGORY_TAG[connective.category]
    category = connective.category
    clauses = analysis.clauses
    if category is ConjunctionCategory.COORDINATING:
        return tag, [c.tokens for c in clauses]
    if category is ConjunctionCategory.ADVERSATIVE:
        return tag, [c.tokens for c in clauses if c.connective is not None]
    if category is ConjunctionCategory.CONCESSIVE:
        return tag, [c.tokens for c in clauses if c.role is ClauseRole.SUBORDINATE]
    if category is ConjunctionCategory.CAUSE_EFFECT:
        return tag, [c.tokens for c in clauses if c.role is ClauseRole.MAIN]
    # Relative: the main clause may be split around the relative span;
    # rejoin its parts into one span for mention scanning.
    main_tokens: tuple[Token, ...] = ()
    for clause in clauses:
        if clause.role is ClauseRole.MAIN:
            main_tokens = main_tokens + clause.tokens
    return tag, [main_tokens]


def assert_from_conjoined(
    analysis: SentenceAnalysis,
    index: MentionIndex,
    lexicon: Lexicon,
) -> list[PolarityAssertion]:
    designated = _designated_spans(analysis)
    if designated is None:
        return []
    tag, spans = designated
    doc, sentence = analysis.sentence_ref
    out = []
    for span in spans:
        assertion = assert_from_simple(span, index, lexicon, doc, sentence, tag)
        if assertion is not None:
            out.append(assertion)
    return out


def assert_from_speech(
    analysis: SentenceAnalysis,
    index: MentionIndex,
    lexicon: Lexicon,
) -> tuple[PolarityAssertion | None, list[str]]:
    """Speaker's polarity toward the first mention in the content."""
    info = analysis.reporting
    doc, sentence = analysis.sentence_ref
    if info.reporting_clause_form is not SentenceForm.SIMPLE:
        return None, [
            f"doc {doc} sentence {sentence}: reporting clause not simple; skipped"
        ]
    speaker = next(
        (
            m
            for m in index.find_mentions(info.speaker_span)
            if m.target_or_event != EVENT
        ),
        None,
    )
    if speaker is None:
        return None, [f"doc {doc} sentence {sentence}: speaker is not a known target"]
    content_mentions = index.find_mentions(info.content_span)
    to = next(
        (m for m in content_mentions if m.target_or_event != speaker.target_or_event),
        None,
    )
    if to is None:
        return None, []
    orientation = semantic_orientation(list(info.content_span), lexicon)
    if orientation.polarity is Polarity.NEUTRAL:
        return None, []
    rule = "Direct" if analysis.form is SentenceForm.DIRECT_SPEECH else "Indirect"
    return (
        PolarityAssertion(
            from_ref=speaker.target_or_event,
            to_ref=to.target_or_event,
            sign=orientation.polarity.sign,
            doc=doc,
            sentence=sentence,
            rule=rule,
        ),
        [],
    )


def run_pass1(
    docs: list[Document],
    targets: TargetSet,
    event_aliases: set[str] | frozenset[str],
    lexicon: Lexicon,
    reporting_verbs: frozenset[str] | None = None,
    verbs: frozenset[str] | None = None,
) -> tuple[list[PolarityAssertion], Pass1Stats]:
    """Extract assertions from every article sentence.

    Never aborts on a single sentence; problems are collected in the
    returned stats.
    """
    if reporting_verbs is None:
        reporting_verbs = resources.reporting_verbs()
    if verbs is None:
        verbs = resources.finite_verbs()
    index = MentionIndex(targets, event_aliases)
    assertions: list[PolarityAssertion] = []
    stats = Pass1Stats()
    for doc in docs:
        for sentence in doc.sentences:
            stats.sentences += 1
            if sentence.text.rstrip().endswith("?"):
                stats.skipped_questions += 1
                continue
            if not index.find_mentions(sentence.tokens):
                stats.no_mention_sentences += 1
                stats.diagnostics.append(
                    f"doc {doc.id} sentence {sentence.index}: no mentions"
                )
                continue
            analysis, diags = analyze_sentence(
                doc.id, sentence, reporting_verbs, verbs
            )
            stats.diagnostics.extend(
                f"doc {doc.id} sentence {sentence.index}: {d}" for d in diags
            )
            emitted: list[PolarityAssertion] = []
            if analysis.reporting is not None:
                assertion, speech_diags = assert_from_speech(analysis, index, lexicon)
                stats.diagnostics.extend(speech_diags)
                if assertion is not None:
                    emitted.append(assertion)
            elif analysis.form in (SentenceForm.COMPOUND, SentenceForm.COMPLEX):
                emitted.extend(assert_from_conjoined(analysis, index, lexicon))
            else:
                assertion = assert_from_simple(
                    analysis.clauses[0].tokens,
                    index,
                    lexicon,
                    doc.id,
                    sentence.index,
                    "Simple",
                )
                if assertion is not None:
                    emitted.append(assertion)
            for assertion in emitted:
                stats.rule_counts[assertion.rule] = (
                    stats.rule_counts.get(assertion.rule, 0) + 1
                )
            stats.emitted += len(emitted)
            assertions.extend(emitted)
    return assertions, stats
