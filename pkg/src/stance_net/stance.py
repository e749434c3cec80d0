"""Message stance toward the event.

A message's stance is driven by the targets it mentions: sentiment
toward the target times the target's resolved polarity toward the
event.  Speaking well of a pro-event target or badly of an anti-event
target both read as support; the reverse reads as opposition.

The event itself acts as a pseudo-target of polarity +1, so sentiment
toward a direct event mention passes through unchanged.  With several
mentioned targets the contribution signs are summed and the stance is
the sign of the sum.  Unresolved targets stay listed with a zero
contribution; a message mentioning nothing known is flagged unmatched
and defaults to Neutral.
"""

from dataclasses import dataclass

from .assertions import EVENT, MentionIndex
from .corpus import Document
from .errors import InputError
from .network import SignedNetwork
from .sentiment import Lexicon, Polarity, semantic_orientation
from .targets import TargetSet


@dataclass(frozen=True)
class Contribution:
    target: str
    sentiment: int  # S: sign of message orientation for this target
    polarity: int  # R: resolved sign toward the event; 0 when unresolved
    product: int


@dataclass(frozen=True)
class StanceResult:
    message_id: str
    stance: Polarity
    contributions: tuple[Contribution, ...]
    unmatched: bool

    def to_record(self) -> dict:
        return {
            "id": self.message_id,
            "stance": self.stance.value,
            "unmatched": self.unmatched,
            "contributions": [
                {
                    "target": c.target,
                    "sentiment": c.sentiment,
                    "polarity": c.polarity,
                    "product": c.product,
                }
                for c in self.contributions
            ],
        }


def stance_result_from_record(record: dict) -> StanceResult:
    """Inverse of StanceResult.to_record."""
    try:
        return StanceResult(
            message_id=str(record["id"]),
            stance=Polarity(record["stance"]),
            contributions=tuple(
                Contribution(
                    target=str(c["target"]),
                    sentiment=int(c["sentiment"]),
                    polarity=int(c["polarity"]),
                    product=int(c["product"]),
                )
                for c in record.get("contributions", ())
            ),
            unmatched=bool(record["unmatched"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed stance record: {exc}") from exc


def classify_message(
    message: Document,
    network: SignedNetwork,
    targets: TargetSet,
    lexicon: Lexicon,
    event_aliases: set[str] | frozenset[str] | list[str] = (),
    sentiment_window: int | None = None,
) -> StanceResult:
    """Stance of one message; mention matching mirrors the article pass.

    With ``sentiment_window`` set, sentiment is taken over that many
    tokens on each side of a mention instead of the whole message.
    """
    index = MentionIndex(targets, frozenset(event_aliases))
    tokens = message.all_tokens()

    mentioned: list[tuple[str, tuple[int, int]]] = []
    seen: set[str] = set()
    offset = 0
    for sentence in message.sentences:
        for mention in index.find_mentions(sentence.tokens):
            ref = mention.target_or_event
            if ref not in seen:
                seen.add(ref)
                start, length = mention.span
                mentioned.append((ref, (offset + start, length)))
        offset += len(sentence.tokens)

    whole_sign = semantic_orientation(tokens, lexicon).polarity.sign
    contributions = []
    total = 0
    for ref, (start, length) in mentioned:
        if sentiment_window is None:
            sentiment = whole_sign
        else:
            lo = max(0, start - sentiment_window)
            hi = min(len(tokens), start + length + sentiment_window)
            sentiment = semantic_orientation(tokens[lo:hi], lexicon).polarity.sign
        if ref == EVENT:
            polarity = 1
        else:
            polarity = network.resolved.get(ref, 0)
        product = sentiment * polarity
        total += product
        contributions.append(
            Contribution(
                target=ref, sentiment=sentiment, polarity=polarity, product=product
            )
        )

    if not contributions:
        return StanceResult(
            message_id=message.id,
            stance=Polarity.NEUTRAL,
            contributions=(),
            unmatched=True,
        )
    return StanceResult(
        message_id=message.id,
        stance=Polarity.from_score(total),
        contributions=tuple(contributions),
        unmatched=False,
    )


def classify_corpus(
    messages: list[Document],
    network: SignedNetwork,
    targets: TargetSet,
    lexicon: Lexicon,
    event_aliases: set[str] | frozenset[str] | list[str] = (),
    sentiment_window: int | None = None,
) -> tuple[list[StanceResult], list[str]]:
    """One result per message in order; failures never abort the run."""
    results = []
    errors = []
    for message in messages:
        try:
            results.append(
                classify_message(
                    message, network, targets, lexicon, event_aliases, sentiment_window
                )
            )
        except Exception as exc:  # pragma: no cover - defensive
            errors.append(f"message {message.id}: {exc}")
            results.append(
                StanceResult(
                    message_id=message.id,
                    stance=Polarity.NEUTRAL,
                    contributions=(),
                    unmatched=True,
                )
            )
    return results, errors
