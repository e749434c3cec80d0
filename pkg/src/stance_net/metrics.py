"""Accuracy and average F1 against binary gold labels.

Gold stances are Positive or Negative only; predictions may also be
Neutral.  The confusion matrix is therefore 2x3 (gold rows, predicted
columns).  Neutral predictions either count as wrong (default) or drop
the message from the evaluation entirely, per ``NeutralPolicy``.
"""

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import InputError
from .jsonl import iter_record_lines
from .sentiment import Polarity
from .stance import StanceResult

GOLD_STANCES = (Polarity.POSITIVE, Polarity.NEGATIVE)
PRED_STANCES = (Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL)


class NeutralPolicy(Enum):
    COUNT_WRONG = "CountWrong"
    EXCLUDE = "Exclude"


@dataclass(frozen=True)
class GoldLabel:
    message_id: str
    stance: Polarity


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    precision_positive: float
    recall_positive: float
    f1_positive: float
    precision_negative: float
    recall_negative: float
    f1_negative: float
    f1_average: float
    confusion: dict[str, dict[str, int]]
    evaluated: int
    excluded: int
    neutral_policy: NeutralPolicy
    coverage: dict[str, float] | None = None

    def to_record(self) -> dict:
        record = {
            "accuracy": self.accuracy,
            "precision_positive": self.precision_positive,
            "recall_positive": self.recall_positive,
            "f1_positive": self.f1_positive,
            "precision_negative": self.precision_negative,
            "recall_negative": self.recall_negative,
            "f1_negative": self.f1_negative,
            "f1_average": self.f1_average,
            "confusion": self.confusion,
            "evaluated": self.evaluated,
            "excluded": self.excluded,
            "neutral_policy": self.neutral_policy.value,
        }
        if self.coverage is not None:
            record["coverage"] = self.coverage
        return record


def report_from_record(record: dict) -> EvalReport:
    try:
        return EvalReport(
            accuracy=float(record["accuracy"]),
            precision_positive=float(record["precision_positive"]),
            recall_positive=float(record["recall_positive"]),
            f1_positive=float(record["f1_positive"]),
            precision_negative=float(record["precision_negative"]),
            recall_negative=float(record["recall_negative"]),
            f1_negative=float(record["f1_negative"]),
            f1_average=float(record["f1_average"]),
            confusion={
                g: {p: int(n) for p, n in row.items()}
                for g, row in record["confusion"].items()
            },
            evaluated=int(record["evaluated"]),
            excluded=int(record["excluded"]),
            neutral_policy=NeutralPolicy(record["neutral_policy"]),
            coverage=record.get("coverage"),
        )
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed evaluation record: {exc}") from exc


def load_gold(path: str | Path) -> list[GoldLabel]:
    """Load line-delimited {"id", "stance"} gold labels.

    Unlike document loading, any malformed line is fatal: a silently
    shrunken gold set would corrupt every reported metric.
    """
    labels: list[GoldLabel] = []
    seen: set[str] = set()
    for lineno, line in iter_record_lines(path):
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: line {lineno}: invalid JSON: {exc.msg}")
        if not isinstance(record, dict) or "id" not in record or "stance" not in record:
            raise InputError(
                f"{path}: line {lineno}: record must be an object with 'id' and 'stance'"
            )
        message_id = str(record["id"])
        if message_id in seen:
            raise InputError(f"{path}: line {lineno}: duplicate id '{message_id}'")
        seen.add(message_id)
        try:
            stance = Polarity(record["stance"])
        except ValueError:
            stance = None
        if stance not in GOLD_STANCES:
            raise InputError(
                f"{path}: line {lineno}: stance must be 'Positive' or 'Negative', "
                f"got {record['stance']!r}"
            )
        labels.append(GoldLabel(message_id=message_id, stance=stance))
    if not labels:
        raise InputError(f"{path}: no gold labels")
    return labels


def _safe_div(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


def evaluate(
    predictions: list[StanceResult],
    gold: list[GoldLabel],
    neutral_policy: NeutralPolicy = NeutralPolicy.COUNT_WRONG,
    coverage: dict[str, float] | None = None,
) -> EvalReport:
    """Score predictions against gold labels.

    Every gold id must have a prediction; extra predictions are ignored.
    All ratio conventions are 0/0 -> 0.
    """
    predicted = {p.message_id: p.stance for p in predictions}
    missing = sorted(g.message_id for g in gold if g.message_id not in predicted)
    if missing:
        raise InputError("missing predictions for ids: " + ", ".join(missing))

    confusion = {
        g.value: {p.value: 0 for p in PRED_STANCES} for g in GOLD_STANCES
    }
    for label in gold:
        confusion[label.stance.value][predicted[label.message_id].value] += 1

    neutral_count = sum(
        confusion[g.value][Polarity.NEUTRAL.value] for g in GOLD_STANCES
    )
    if neutral_policy is NeutralPolicy.EXCLUDE:
        excluded = neutral_count
        effective = {
            g.value: {
                p.value: (0 if p is Polarity.NEUTRAL else confusion[g.value][p.value])
                for p in PRED_STANCES
            }
            for g in GOLD_STANCES
        }
    else:
        excluded = 0
        effective = confusion

    evaluated = sum(sum(row.values()) for row in effective.values())
    correct = sum(effective[g.value][g.value] for g in GOLD_STANCES)
    accuracy = _safe_div(correct, evaluated)

    scores = {}
    for cls in GOLD_STANCES:
        other = GOLD_STANCES[1 - GOLD_STANCES.index(cls)]
        tp = effective[cls.value][cls.value]
        fp = effective[other.value][cls.value]
        fn = sum(effective[cls.value].values()) - tp
        precision = _safe_div(tp, tp + fp)
        recall = _safe_div(tp, tp + fn)
        f1 = _safe_div(2 * precision * recall, precision + recall)
        scores[cls] = (precision, recall, f1)

    p_pos, r_pos, f1_pos = scores[Polarity.POSITIVE]
    p_neg, r_neg, f1_neg = scores[Polarity.NEGATIVE]
    return EvalReport(
        accuracy=accuracy,
        precision_positive=p_pos,
        recall_positive=r_pos,
        f1_positive=f1_pos,
        precision_negative=p_neg,
        recall_negative=r_neg,
        f1_negative=f1_neg,
        f1_average=(f1_pos + f1_neg) / 2,
        confusion=confusion,
        evaluated=evaluated,
        excluded=excluded,
        neutral_policy=neutral_policy,
        coverage=coverage,
    )
