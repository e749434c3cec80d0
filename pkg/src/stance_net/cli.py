"""Command-line interface.

Exit codes: 0 success, 1 bad input (including usage errors), 2 pipeline
stage failure.  Subcommands other than `run` and `serve` are thin
wrappers over single pipeline stages so intermediate files can be
inspected or swapped between steps.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__, resources
from .assertions import assertion_from_record, run_pass1
from .corpus import DocumentKind, load_documents
from .errors import InputError, StageError
from .jsonl import dumps, read_records, write_records
from .metrics import NeutralPolicy, evaluate, load_gold
from .network import (
    build_network,
    coverage_report,
    edge_record,
    network_from_record,
    network_to_record,
    partition,
    resolve_all,
    to_dot,
)
from .pipeline import load_config, run_pipeline, stage, write_json
from .sentiment import load_lexicon
from .stance import classify_corpus, stance_result_from_record
from .targets import (
    TargetSet,
    assemble_target_set,
    extract_candidate_phrases,
    extract_key_players,
    phrase_report,
    select_key_phrases,
    target_from_record,
    target_to_record,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _read_jsonl(path: Path, parse, what: str):
    try:
        items = []
        for lineno, record in read_records(path):
            try:
                items.append(parse(record))
            except InputError as exc:
                raise InputError(f"{path}: line {lineno}: {exc}")
        return items
    except OSError as exc:
        raise InputError(f"cannot read {what} {path}: {exc}")
    except ValueError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}")


def _load_articles(path: Path) -> list:
    try:
        articles, errors = load_documents(path, DocumentKind.ARTICLE)
    except OSError as exc:
        raise InputError(f"cannot read articles {path}: {exc}")
    for error in errors:
        print(f"articles: {error}", file=sys.stderr)
    return articles


def _cmd_extract_targets(args) -> int:
    articles = _load_articles(args.articles)
    stoplist = (
        resources.load_word_list(args.stopwords) if args.stopwords
        else resources.stopwords()
    )
    with stage("targets"):
        phrases = extract_candidate_phrases(articles, stoplist)
        key_phrases, threshold = select_key_phrases(phrases)
        key_players = extract_key_players(articles, stoplist=stoplist)
        targets = TargetSet(
            key_phrases=tuple(key_phrases),
            key_players=tuple(key_players),
            threshold=threshold,
        )
        stats = phrase_report(
            phrases, threshold, selected=len(key_phrases), key_players=len(key_players)
        )
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_records(
            out / "targets.jsonl", (target_to_record(t) for t in targets.all_targets())
        )
        write_json(out / "target_stats.json", stats)
    print(_stats_line(stats))
    return 0


def _cmd_build_network(args) -> int:
    aliases = tuple(args.event_alias or ())
    if not aliases:
        raise InputError("at least one --event-alias is required")
    targets = assemble_target_set(
        _read_jsonl(args.targets, target_from_record, "targets")
    )
    if args.assertions is not None:
        assertions = _read_jsonl(args.assertions, assertion_from_record, "assertions")
    else:
        if args.articles is None:
            raise InputError("one of --articles or --assertions is required")
        articles = _load_articles(args.articles)
        lexicon, warnings = _load_lexicon(args.lexicon)
        for warning in warnings:
            print(f"lexicon: {warning}", file=sys.stderr)
        with stage("pass1"):
            assertions, stats = run_pass1(articles, targets, aliases, lexicon)
        for diagnostic in stats.diagnostics:
            print(f"pass1: {diagnostic}", file=sys.stderr)

    with stage("network"):
        network = resolve_all(build_network(assertions, targets))
        _, violations = partition(network)
        coverage = coverage_report(network, len(targets.all_targets()))
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.assertions is None:
            write_records(
                out / "assertions.jsonl", (a.to_record() for a in assertions)
            )
        write_json(
            out / "network.json",
            network_to_record(network, targets, list(aliases), violations),
        )
        write_records(
            out / "network_edges.jsonl",
            (edge_record(e) for _, e in sorted(network.edges.items())),
        )
        (out / "network.dot").write_text(to_dot(network), encoding="utf-8")
        write_json(out / "coverage.json", coverage)
    for violation in violations:
        print(f"network: {violation}", file=sys.stderr)
    print(_coverage_line(coverage))
    return 0


def _cmd_classify(args) -> int:
    try:
        with open(args.network, encoding="utf-8") as fh:
            record = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read network {args.network}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.network}: invalid JSON: {exc.msg}")
    network, targets, aliases = network_from_record(record)

    try:
        messages, errors = load_documents(args.messages, DocumentKind.MESSAGE)
    except OSError as exc:
        raise InputError(f"cannot read messages {args.messages}: {exc}")
    for error in errors:
        print(f"messages: {error}", file=sys.stderr)

    lexicon, warnings = _load_lexicon(args.lexicon)
    for warning in warnings:
        print(f"lexicon: {warning}", file=sys.stderr)

    with stage("stance"):
        stances, errors = classify_corpus(
            messages, network, targets, lexicon, aliases, args.sentiment_window
        )
        for error in errors:
            print(f"stance: {error}", file=sys.stderr)
        args.out.parent.mkdir(parents=True, exist_ok=True)
        write_records(args.out, (s.to_record() for s in stances))
    unmatched = sum(1 for s in stances if s.unmatched)
    print(f"stances: {len(stances)} messages ({unmatched} unmatched)")
    return 0


def _cmd_evaluate(args) -> int:
    predictions = _read_jsonl(args.pred, stance_result_from_record, "predictions")
    gold = load_gold(args.gold)
    report = evaluate(predictions, gold, NeutralPolicy(args.neutral_policy))
    print(dumps(report.to_record()))
    return 0


def _cmd_run(args) -> int:
    overrides = {
        "articles": args.articles,
        "messages": args.messages,
        "gold": args.gold,
        "lexicon": args.lexicon,
        "out_dir": args.out_dir,
        "event_aliases": tuple(args.event_alias) if args.event_alias else None,
        "sentiment_window": args.sentiment_window,
        "neutral_policy": (
            NeutralPolicy(args.neutral_policy) if args.neutral_policy else None
        ),
    }
    config = load_config(args.config, overrides)
    result = run_pipeline(config)
    for diagnostic in result.diagnostics:
        print(diagnostic, file=sys.stderr)
    print(_stats_line(result.target_stats))
    print(_coverage_line(result.coverage))
    unmatched = sum(1 for s in result.stances if s.unmatched)
    print(f"stances: {len(result.stances)} messages ({unmatched} unmatched)")
    if result.report is not None:
        print(
            f"eval: accuracy={result.report.accuracy:.3f} "
            f"f1_average={result.report.f1_average:.3f}"
        )
    print(f"artifacts: {result.out_dir}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def _load_lexicon(path: Path | None):
    return load_lexicon(path or resources.default_lexicon_path())


def _stats_line(stats: dict) -> str:
    return (
        "targets: candidates={candidates} selected={selected} "
        "max={max_importance:g} mean={mean_importance:g} sd={sd_importance:g} "
        "threshold={threshold:g} key_players={key_players}".format(**stats)
    )


def _coverage_line(coverage: dict) -> str:
    return (
        "coverage: pass1={pass1:.4f} pass2={pass2:.4f} "
        "unresolved={unresolved:.4f}".format(**coverage)
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stance-net", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract-targets", help="extract key-phrases and key-players")
    p.add_argument("--articles", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--stopwords", type=Path)
    p.set_defaults(handler=_cmd_extract_targets)

    p = sub.add_parser("build-network", help="build and resolve the signed network")
    p.add_argument("--articles", type=Path)
    p.add_argument("--assertions", type=Path, help="reuse assertion records")
    p.add_argument("--targets", type=Path, required=True)
    p.add_argument("--event-alias", action="append", metavar="S")
    p.add_argument("--lexicon", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=_cmd_build_network)

    p = sub.add_parser("classify", help="label message stances")
    p.add_argument("--messages", type=Path, required=True)
    p.add_argument("--network", type=Path, required=True)
    p.add_argument("--lexicon", type=Path)
    p.add_argument("--sentiment-window", type=int)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=_cmd_classify)

    policy_names = [n.value for n in NeutralPolicy]

    p = sub.add_parser("evaluate", help="score predictions against gold labels")
    p.add_argument("--pred", type=Path, required=True)
    p.add_argument("--gold", type=Path, required=True)
    p.add_argument(
        "--neutral-policy",
        choices=policy_names,
        default=NeutralPolicy.COUNT_WRONG.value,
    )
    p.set_defaults(handler=_cmd_evaluate)

    p = sub.add_parser("run", help="run the full pipeline from a config file")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--articles", type=Path)
    p.add_argument("--messages", type=Path)
    p.add_argument("--gold", type=Path)
    p.add_argument("--lexicon", type=Path)
    p.add_argument("--out-dir", type=Path)
    p.add_argument("--event-alias", action="append", metavar="S")
    p.add_argument("--sentiment-window", type=int)
    p.add_argument("--neutral-policy", choices=policy_names)
    p.set_defaults(handler=_cmd_run)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
