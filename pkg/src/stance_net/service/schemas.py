"""Request and response models for the HTTP API.

Response shapes mirror the artifact records written by the CLI so that
a stored network.json and a GET /events/{id}/network body are
interchangeable.
"""

from pydantic import BaseModel, ConfigDict, Field


class ArticleIn(BaseModel):
    id: str = Field(min_length=1)
    text: str


class MessageIn(BaseModel):
    id: str = Field(min_length=1)
    text: str


class EventCreate(BaseModel):
    articles: list[ArticleIn] = Field(min_length=1)
    event_aliases: list[str] = Field(min_length=1)
    # optional lexicon, given as lines in the tab-separated file format;
    # the bundled default lexicon is used when omitted
    lexicon: list[str] | None = None


class TargetOut(BaseModel):
    id: str
    kind: str
    surface_forms: list[str]
    importance: float | None = None


class TargetStatsOut(BaseModel):
    candidates: int
    selected: int
    max_importance: float
    mean_importance: float
    sd_importance: float
    threshold: float
    key_players: int


class CoverageOut(BaseModel):
    pass1: float
    pass2: float
    unresolved: float


class EdgeOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    from_: str = Field(alias="from")
    to: str
    sign: int
    # (positive, negative) assertion counts behind the edge
    support: list[int] = Field(min_length=2, max_length=2)
    conflicted: bool
    hypothetical: bool


class NetworkOut(BaseModel):
    event_aliases: list[str]
    threshold: float
    targets: list[TargetOut]
    edges: list[EdgeOut]
    resolved: dict[str, int]
    unresolved: list[str]
    excluded: list[str]
    pass1_direct: list[str]
    dropped_pairs: list[list[str]]
    contradictions: list[str]
    violations: list[str]


class EventOut(BaseModel):
    event_id: str
    targets: list[TargetOut]
    target_stats: TargetStatsOut
    coverage: CoverageOut
    violations: list[str]
    diagnostics: list[str]


class ClassifyRequest(BaseModel):
    messages: list[MessageIn] = Field(min_length=1)
    sentiment_window: int | None = Field(default=None, ge=1)


class ContributionOut(BaseModel):
    target: str
    sentiment: int
    polarity: int
    product: int


class StanceOut(BaseModel):
    id: str
    stance: str
    unmatched: bool
    contributions: list[ContributionOut]


class ClassifyResponse(BaseModel):
    stances: list[StanceOut]
    diagnostics: list[str]


class LabelIn(BaseModel):
    id: str = Field(min_length=1)
    stance: str


class EvaluateRequest(BaseModel):
    predictions: list[LabelIn]
    gold: list[LabelIn] = Field(min_length=1)
    neutral_policy: str = "CountWrong"


class EvalOut(BaseModel):
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
    neutral_policy: str
    coverage: CoverageOut | None = None


class HealthOut(BaseModel):
    status: str
    version: str
