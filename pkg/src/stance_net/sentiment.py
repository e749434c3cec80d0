"""Lexicon-based semantic orientation scoring.

A clause's orientation is the sum of per-word scores, adjusted by two
modifier rules applied to the next sentiment-bearing word:

* amplifier/downtoner with percent p: score becomes so × (1 + p/100)
  ("very good" with very=+25%, good=+3 gives +3.75)
* negation with shift q: score becomes so − q ("not good" with not=4,
  good=+3 gives −1)

NOTE: negation is a literal subtraction of the shift score, never a sign
flip.  Applied to an already-negative word it pushes the score further
negative ("not bad" with bad=−3, not=4 gives −7).  This is deliberate;
do not "fix" it to the more common shift-toward-opposite convention.

Modifier chains ("not very good") resolve right-to-left: the amplifier
scales first, then the negation shift is subtracted.  Words absent from
the lexicon contribute 0 and leave pending modifiers intact; a modifier
with no following sentiment word contributes 0.
"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .corpus import Token
from .errors import InputError


class Polarity(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    NEUTRAL = "Neutral"

    @property
    def sign(self) -> int:
        if self is Polarity.POSITIVE:
            return 1
        if self is Polarity.NEGATIVE:
            return -1
        return 0

    @staticmethod
    def from_score(score: float) -> "Polarity":
        if score > 0:
            return Polarity.POSITIVE
        if score < 0:
            return Polarity.NEGATIVE
        return Polarity.NEUTRAL


@dataclass(frozen=True)
class LexiconEntry:
    """One lexicon word.

    ``so`` doubles as the negation shift score when ``is_negation`` is
    set.  When a word somehow carries several roles, negation dominates,
    then intensifier, then plain sentiment.
    """

    word: str
    so: float = 0.0
    intensifier_pct: float | None = None
    is_negation: bool = False

    @property
    def is_intensifier(self) -> bool:
        return not self.is_negation and self.intensifier_pct is not None


Lexicon = dict[str, LexiconEntry]


def load_lexicon(path: str | Path) -> tuple[Lexicon, list[str]]:
    """Parse a tab-separated lexicon file.

    Lines are ``word<TAB>score``, ``word<TAB>INT<TAB>percent`` or
    ``word<TAB>NEG<TAB>shift``; '#' starts a comment; words are
    case-insensitive.  Returns the lexicon plus warnings for duplicate
    words (last entry wins).  Malformed lines raise InputError.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read lexicon {path}: {exc}") from exc
    return parse_lexicon_lines(lines, source=str(path))


def parse_lexicon_lines(
    lines: list[str], source: str = "lexicon"
) -> tuple[Lexicon, list[str]]:
    """Parse lexicon lines already split from their source."""
    lexicon: Lexicon = {}
    warnings: list[str] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split("\t")
        try:
            entry = _parse_entry(parts)
        except ValueError as exc:
            raise InputError(f"{source}: line {lineno}: {exc}") from exc
        if entry.word in lexicon:
            warnings.append(
                f"line {lineno}: duplicate lexicon word '{entry.word}', "
                "keeping the later entry"
            )
        lexicon[entry.word] = entry
    return lexicon, warnings


def _parse_entry(parts: list[str]) -> LexiconEntry:
    if len(parts) == 2:
        word, score = parts
        if not word.strip():
            raise ValueError("empty word")
        return LexiconEntry(word=word.strip().lower(), so=_number(score))
    if len(parts) == 3:
        word, tag, value = parts
        word = word.strip().lower()
        if not word:
            raise ValueError("empty word")
        tag = tag.strip().upper()
        if tag == "INT":
            pct = _number(value)
            if not -100 <= pct <= 400:
                raise ValueError(f"intensifier percent {pct} outside [-100, 400]")
            return LexiconEntry(word=word, intensifier_pct=pct)
        if tag == "NEG":
            return LexiconEntry(word=word, so=_number(value), is_negation=True)
        raise ValueError(f"unknown tag '{tag}' (expected INT or NEG)")
    raise ValueError(
        "expected 'word<TAB>score', 'word<TAB>INT<TAB>percent' "
        "or 'word<TAB>NEG<TAB>shift'"
    )


def _number(text: str) -> float:
    try:
        value = float(text.strip())
    except ValueError:
        raise ValueError(f"'{text.strip()}' is not a number") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"score {text.strip()} is not finite")
    return value


@dataclass(frozen=True)
class OrientationResult:
    total: float
    per_token: tuple[tuple[str, float], ...]
    polarity: Polarity


def semantic_orientation(
    tokens: list[Token] | list[str], lexicon: Lexicon
) -> OrientationResult:
    """Score a token sequence left to right.

    Every input token appears in per_token with its adjusted
    contribution; the total is their sum and the polarity its sign.
    """
    total = 0.0
    per_token: list[tuple[str, float]] = []
    pending: list[LexiconEntry] = []
    for tok in tokens:
        word = tok if isinstance(tok, str) else tok.normalized
        entry = lexicon.get(word)
        if entry is None:
            per_token.append((word, 0.0))
            continue
        if entry.is_negation or entry.is_intensifier:
            pending.append(entry)
            per_token.append((word, 0.0))
            continue
        value = entry.so
        for mod in reversed(pending):
            if mod.is_negation:
                value -= mod.so
            else:
                value *= 1 + (mod.intensifier_pct or 0.0) / 100.0
        pending.clear()
        total += value
        per_token.append((word, value))
    return OrientationResult(
        total=total,
        per_token=tuple(per_token),
        polarity=Polarity.from_score(total),
    )


def clause_polarity(tokens: list[Token] | list[str], lexicon: Lexicon) -> Polarity:
    return semantic_orientation(tokens, lexicon).polarity
