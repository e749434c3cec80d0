"""Full pipeline: articles and messages in, stance labels and reports out.

The run config is one JSON object; paths inside it are resolved against
the config file's directory.  Every artifact is rewritten with stable
key order and sorted iteration, so identical inputs give byte-identical
output trees.

Stage order: corpus load, target extraction, sentence-level polarity
assertions, signed-network resolution, message classification, optional
evaluation.  A failure inside a stage raises StageError with the stage
name; everything recoverable (skipped malformed lines, lexicon warnings,
per-message failures) is collected into ``diagnostics`` instead.
"""

import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from . import resources
from .assertions import PolarityAssertion, run_pass1
from .corpus import Document, DocumentKind, load_documents
from .errors import InputError, StageError
from .jsonl import write_records
from .metrics import EvalReport, NeutralPolicy, evaluate, load_gold
from .network import (
    SignedNetwork,
    build_network,
    coverage_report,
    edge_record,
    network_to_record,
    partition,
    resolve_all,
    to_dot,
)
from .sentiment import Lexicon, load_lexicon
from .stance import StanceResult, classify_corpus
from .targets import (
    TargetSet,
    extract_candidate_phrases,
    extract_key_players,
    phrase_report,
    select_key_phrases,
    target_to_record,
)

ARTIFACT_NAMES = (
    "targets.jsonl",
    "target_stats.json",
    "assertions.jsonl",
    "network.json",
    "network_edges.jsonl",
    "network.dot",
    "coverage.json",
    "stances.jsonl",
    "eval.json",
)

_PATH_KEYS = (
    "articles",
    "messages",
    "gold",
    "lexicon",
    "stopwords",
    "honorifics",
    "verbs",
    "reporting_verbs",
    "abbreviations",
)
_CONFIG_KEYS = frozenset(_PATH_KEYS) | {
    "out_dir",
    "event_aliases",
    "sentiment_window",
    "neutral_policy",
}


@dataclass
class RunConfig:
    articles: Path
    messages: Path
    out_dir: Path
    event_aliases: tuple[str, ...]
    gold: Path | None = None
    lexicon: Path | None = None
    stopwords: Path | None = None
    honorifics: Path | None = None
    verbs: Path | None = None
    reporting_verbs: Path | None = None
    abbreviations: Path | None = None
    sentiment_window: int | None = None
    neutral_policy: NeutralPolicy = NeutralPolicy.COUNT_WRONG


def load_config(path: str | Path, overrides: dict | None = None) -> RunConfig:
    """Parse a run config file, applying CLI overrides on top.

    Paths from the file are resolved against the file's directory;
    override paths are taken as given (the caller typed them).
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc.msg} (line {exc.lineno})")
    if not isinstance(raw, dict):
        raise InputError(f"{path}: config must be a JSON object")
    unknown = sorted(set(raw) - _CONFIG_KEYS)
    if unknown:
        raise InputError(f"{path}: unknown config keys: {', '.join(unknown)}")

    base = path.parent
    values: dict = {}
    for key in _PATH_KEYS:
        if raw.get(key) is not None:
            values[key] = base / str(raw[key])
    if raw.get("out_dir") is not None:
        values["out_dir"] = base / str(raw["out_dir"])
    if raw.get("event_aliases") is not None:
        values["event_aliases"] = raw["event_aliases"]
    if raw.get("sentiment_window") is not None:
        values["sentiment_window"] = raw["sentiment_window"]
    if raw.get("neutral_policy") is not None:
        values["neutral_policy"] = raw["neutral_policy"]

    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value

    for key in ("articles", "messages", "out_dir", "event_aliases"):
        if key not in values:
            raise InputError(f"{path}: missing required config key '{key}'")

    aliases = values["event_aliases"]
    if (
        not isinstance(aliases, (list, tuple))
        or not aliases
        or not all(isinstance(a, str) and a.strip() for a in aliases)
    ):
        raise InputError(
            f"{path}: event_aliases must be a non-empty list of non-empty strings"
        )
    values["event_aliases"] = tuple(str(a) for a in aliases)

    window = values.get("sentiment_window")
    if window is not None and (not isinstance(window, int) or window < 1):
        raise InputError(f"{path}: sentiment_window must be a positive integer")

    policy = values.get("neutral_policy", NeutralPolicy.COUNT_WRONG)
    if not isinstance(policy, NeutralPolicy):
        try:
            policy = NeutralPolicy(policy)
        except ValueError:
            choices = ", ".join(p.value for p in NeutralPolicy)
            raise InputError(f"{path}: neutral_policy must be one of {choices}")
    values["neutral_policy"] = policy

    for key in _PATH_KEYS:
        candidate = values.get(key)
        if candidate is not None and not Path(candidate).is_file():
            raise InputError(f"{path}: {key} file not found: {candidate}")

    return RunConfig(**{k: v for k, v in values.items()})


@dataclass
class PipelineResult:
    targets: TargetSet
    network: SignedNetwork
    stances: list[StanceResult]
    report: EvalReport | None
    target_stats: dict
    coverage: dict
    violations: list[str]
    diagnostics: list[str] = field(default_factory=list)
    out_dir: Path | None = None


@contextmanager
def stage(name: str):
    """Translate errors raised inside the block into a StageError."""
    try:
        yield
    except StageError:
        raise
    except (InputError, OSError) as exc:
        raise StageError(name, str(exc)) from exc


def write_json(path: str | Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")


def _drop_alias_targets(targets: list, event_aliases: tuple[str, ...]) -> list:
    """Drop targets whose every surface form is also an event alias.

    Alias mentions always resolve to the event node, so such a target
    could never be mentioned and would only pad the unresolved count.
    """
    alias_keys = {tuple(a.lower().split()) for a in event_aliases}
    kept = []
    for target in targets:
        keys = {tuple(s.lower().split()) for s in target.surface_forms}
        if not keys <= alias_keys:
            kept.append(target)
    return kept


@dataclass
class EventAnalysis:
    targets: TargetSet
    assertions: list[PolarityAssertion]
    network: SignedNetwork
    target_stats: dict
    coverage: dict
    violations: list[str]
    diagnostics: list[str]


def analyze_event(
    articles: list[Document],
    event_aliases: tuple[str, ...],
    lexicon: Lexicon,
) -> EventAnalysis:
    """Targets, assertions and resolved network for loaded documents.

    The file-free middle of run_pipeline, using the bundled word lists;
    the HTTP layer builds documents from request bodies and calls this.
    Raises InputError when the corpus yields nothing usable.
    """
    diagnostics: list[str] = []
    phrases = extract_candidate_phrases(articles, resources.stopwords())
    key_phrases, threshold = select_key_phrases(phrases)
    key_players = extract_key_players(
        articles,
        honorifics=resources.honorifics(),
        stoplist=resources.stopwords(),
        verbs=resources.finite_verbs(),
    )
    key_phrases = _drop_alias_targets(key_phrases, event_aliases)
    key_players = _drop_alias_targets(key_players, event_aliases)
    targets = TargetSet(
        key_phrases=tuple(key_phrases),
        key_players=tuple(key_players),
        threshold=threshold,
    )
    target_stats = phrase_report(
        phrases, threshold, selected=len(key_phrases), key_players=len(key_players)
    )
    assertions, pass1_stats = run_pass1(articles, targets, event_aliases, lexicon)
    diagnostics += [f"pass1: {d}" for d in pass1_stats.diagnostics]
    network = resolve_all(build_network(assertions, targets))
    _, violations = partition(network)
    diagnostics += [f"network: {v}" for v in violations]
    coverage = coverage_report(network, len(targets.all_targets()))
    return EventAnalysis(
        targets=targets,
        assertions=assertions,
        network=network,
        target_stats=target_stats,
        coverage=coverage,
        violations=violations,
        diagnostics=diagnostics,
    )


def run_pipeline(config: RunConfig) -> PipelineResult:
    diagnostics: list[str] = []
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def listed(path, fallback, strip_dot=False):
        if path is None:
            return fallback()
        words = resources.load_word_list(path)
        return frozenset(w.rstrip(".") for w in words) if strip_dot else words

    stoplist = listed(config.stopwords, resources.stopwords)
    honorifics = listed(config.honorifics, resources.honorifics, strip_dot=True)
    abbreviations = listed(config.abbreviations, resources.abbreviations, strip_dot=True)
    reporting = listed(config.reporting_verbs, resources.reporting_verbs)
    if config.verbs is None and config.reporting_verbs is None:
        finite = resources.finite_verbs()
    else:
        finite = listed(config.verbs, resources.content_verbs) | reporting

    with stage("corpus"):
        articles, errors = load_documents(
            config.articles, DocumentKind.ARTICLE, abbreviations
        )
        diagnostics += [f"articles: {e}" for e in errors]

    with stage("targets"):
        phrases = extract_candidate_phrases(articles, stoplist)
        key_phrases, threshold = select_key_phrases(phrases)
        key_players = extract_key_players(
            articles, honorifics=honorifics, stoplist=stoplist, verbs=finite
        )
        key_phrases = _drop_alias_targets(key_phrases, config.event_aliases)
        key_players = _drop_alias_targets(key_players, config.event_aliases)
        targets = TargetSet(
            key_phrases=tuple(key_phrases),
            key_players=tuple(key_players),
            threshold=threshold,
        )
        target_stats = phrase_report(
            phrases, threshold, selected=len(key_phrases), key_players=len(key_players)
        )
        write_records(
            out / "targets.jsonl",
            (target_to_record(t) for t in targets.all_targets()),
        )
        write_json(out / "target_stats.json", target_stats)

    with stage("pass1"):
        lexicon_path = config.lexicon or resources.default_lexicon_path()
        lexicon, warnings = load_lexicon(lexicon_path)
        diagnostics += [f"lexicon: {w}" for w in warnings]
        assertions, pass1_stats = run_pass1(
            articles,
            targets,
            config.event_aliases,
            lexicon,
            reporting_verbs=reporting,
            verbs=finite,
        )
        diagnostics += [f"pass1: {d}" for d in pass1_stats.diagnostics]
        write_records(out / "assertions.jsonl", (a.to_record() for a in assertions))

    with stage("network"):
        network = resolve_all(build_network(assertions, targets))
        _, violations = partition(network)
        diagnostics += [f"network: {v}" for v in violations]
        coverage = coverage_report(network, len(targets.all_targets()))
        write_json(
            out / "network.json",
            network_to_record(network, targets, list(config.event_aliases), violations),
        )
        write_records(
            out / "network_edges.jsonl",
            (edge_record(e) for _, e in sorted(network.edges.items())),
        )
        (out / "network.dot").write_text(to_dot(network), encoding="utf-8")
        write_json(out / "coverage.json", coverage)

    with stage("stance"):
        messages, errors = load_documents(
            config.messages, DocumentKind.MESSAGE, abbreviations
        )
        diagnostics += [f"messages: {e}" for e in errors]
        stances, errors = classify_corpus(
            messages,
            network,
            targets,
            lexicon,
            config.event_aliases,
            config.sentiment_window,
        )
        diagnostics += [f"stance: {e}" for e in errors]
        write_records(out / "stances.jsonl", (s.to_record() for s in stances))

    report = None
    if config.gold is not None:
        with stage("evaluate"):
            gold = load_gold(config.gold)
            report = evaluate(stances, gold, config.neutral_policy, coverage=coverage)
            write_json(out / "eval.json", report.to_record())
    else:
        (out / "eval.json").unlink(missing_ok=True)

    return PipelineResult(
        targets=targets,
        network=network,
        stances=stances,
        report=report,
        target_stats=target_stats,
        coverage=coverage,
        violations=violations,
        diagnostics=diagnostics,
        out_dir=out,
    )
