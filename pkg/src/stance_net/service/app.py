"""FastAPI application exposing the pipeline over HTTP.

Events are kept in process memory: POST /events runs article analysis
and returns an id; later calls reference it.  Nothing is persisted, a
restart forgets all events.
"""

from dataclasses import dataclass
from uuid import uuid4

from fastapi import FastAPI, HTTPException

from .. import resources
from ..corpus import DocumentKind, build_document
from ..errors import InputError
from ..metrics import GOLD_STANCES, GoldLabel, NeutralPolicy, evaluate
from ..network import network_to_record
from ..pipeline import EventAnalysis, analyze_event
from ..sentiment import Lexicon, Polarity, load_lexicon, parse_lexicon_lines
from ..stance import StanceResult, classify_corpus
from ..targets import target_to_record
from . import schemas

try:
    from .. import __version__
except ImportError:  # pragma: no cover
    __version__ = "0"


@dataclass
class EventState:
    analysis: EventAnalysis
    lexicon: Lexicon
    aliases: tuple[str, ...]


def _documents(items, kind: DocumentKind):
    docs = []
    seen = set()
    for item in items:
        if item.id in seen:
            raise HTTPException(422, f"duplicate {kind.value} id '{item.id}'")
        seen.add(item.id)
        docs.append(build_document(item.id, item.text, kind))
    return docs


def create_app() -> FastAPI:
    app = FastAPI(title="stance-net", version=__version__)
    events: dict[str, EventState] = {}

    def get_event(event_id: str) -> EventState:
        state = events.get(event_id)
        if state is None:
            raise HTTPException(404, f"no event '{event_id}'")
        return state

    @app.get("/health", response_model=schemas.HealthOut)
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/events", response_model=schemas.EventOut, status_code=201)
    def create_event(body: schemas.EventCreate):
        articles = _documents(body.articles, DocumentKind.ARTICLE)
        try:
            if body.lexicon is None:
                lexicon, warnings = load_lexicon(resources.default_lexicon_path())
            else:
                lexicon, warnings = parse_lexicon_lines(body.lexicon)
            aliases = tuple(a for a in body.event_aliases if a.strip())
            if not aliases:
                raise InputError("event_aliases must contain a non-empty alias")
            analysis = analyze_event(articles, aliases, lexicon)
        except InputError as exc:
            raise HTTPException(422, str(exc))
        event_id = uuid4().hex[:12]
        events[event_id] = EventState(analysis=analysis, lexicon=lexicon, aliases=aliases)
        return {
            "event_id": event_id,
            "targets": [target_to_record(t) for t in analysis.targets.all_targets()],
            "target_stats": analysis.target_stats,
            "coverage": analysis.coverage,
            "violations": analysis.violations,
            "diagnostics": analysis.diagnostics + [f"lexicon: {w}" for w in warnings],
        }

    @app.get("/events/{event_id}/targets", response_model=list[schemas.TargetOut])
    def event_targets(event_id: str):
        state = get_event(event_id)
        return [target_to_record(t) for t in state.analysis.targets.all_targets()]

    @app.get("/events/{event_id}/network", response_model=schemas.NetworkOut)
    def event_network(event_id: str):
        state = get_event(event_id)
        return network_to_record(
            state.analysis.network,
            state.analysis.targets,
            list(state.aliases),
            state.analysis.violations,
        )

    @app.get("/events/{event_id}/coverage", response_model=schemas.CoverageOut)
    def event_coverage(event_id: str):
        return get_event(event_id).analysis.coverage

    @app.post("/events/{event_id}/classify", response_model=schemas.ClassifyResponse)
    def classify(event_id: str, body: schemas.ClassifyRequest):
        state = get_event(event_id)
        messages = _documents(body.messages, DocumentKind.MESSAGE)
        results, errors = classify_corpus(
            messages,
            state.analysis.network,
            state.analysis.targets,
            state.lexicon,
            state.aliases,
            body.sentiment_window,
        )
        return {
            "stances": [r.to_record() for r in results],
            "diagnostics": errors,
        }

    @app.post("/evaluate", response_model=schemas.EvalOut)
    def run_evaluation(body: schemas.EvaluateRequest):
        try:
            policy = NeutralPolicy(body.neutral_policy)
        except ValueError:
            choices = ", ".join(p.value for p in NeutralPolicy)
            raise HTTPException(422, f"neutral_policy must be one of {choices}")
        predictions = []
        for label in body.predictions:
            try:
                stance = Polarity(label.stance)
            except ValueError:
                raise HTTPException(422, f"prediction {label.id}: bad stance {label.stance!r}")
            predictions.append(
                StanceResult(
                    message_id=label.id,
                    stance=stance,
                    contributions=(),
                    unmatched=False,
                )
            )
        gold = []
        seen = set()
        for label in body.gold:
            if label.id in seen:
                raise HTTPException(422, f"duplicate gold id '{label.id}'")
            seen.add(label.id)
            try:
                stance = Polarity(label.stance)
            except ValueError:
                stance = None
            if stance not in GOLD_STANCES:
                raise HTTPException(
                    422,
                    f"gold {label.id}: stance must be 'Positive' or 'Negative', "
                    f"got {label.stance!r}",
                )
            gold.append(GoldLabel(message_id=label.id, stance=stance))
        try:
            report = evaluate(predictions, gold, policy)
        except InputError as exc:
            raise HTTPException(422, str(exc))
        return report.to_record()

    return app


app = create_app()
