"""Command-line front end.

Machine-readable results go to stdout, diagnostics to stderr.  Exit codes:
0 success, 1 operational error (unreadable input, invalid ruleset, ...),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .detector import build_report, serialize_report
from .errors import AtdError, LexiconError, RulesetError
from .lexicon import Lexicon, load_lexicon, score_text
from .planner import Budget, plan_edits, serialize_plan
from .proxy.rewrite import rewrite_blocks
from .proxy.server import load_config, serve
from .textio import join_paragraphs, split_paragraphs
from .transforms import (
    CompiledRuleset,
    DocMetadata,
    Document,
    apply_ruleset_blocks,
    find_matches,
    parse_ruleset,
    scope_matches,
    serialize_ruleset,
)


class _UsageError(Exception):
    pass


def _diagnostic(message: str) -> None:
    text = f"atd: {message}"
    if sys.stderr.isatty() and not os.environ.get("ATD_NO_COLOR"):
        text = f"\x1b[31m{text}\x1b[0m"
    print(text, file=sys.stderr)


def _note(args: argparse.Namespace, message: str) -> None:
    if args.verbose:
        print(f"atd: {message}", file=sys.stderr)


def _read_bytes(path: str) -> bytes:
    return Path(path).read_bytes()


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return _read_bytes(path).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise AtdError(f"{path}: not valid UTF-8 ({exc.reason})") from exc


def _load_ruleset(path: str) -> CompiledRuleset:
    try:
        return parse_ruleset(_read_bytes(path))
    except RulesetError as exc:
        raise AtdError(f"{path}: {exc}") from exc


def _load_lexicon(path: str) -> Lexicon:
    try:
        return load_lexicon(_read_bytes(path))
    except LexiconError as exc:
        raise AtdError(f"{path}: {exc}") from exc


def _load_inputs(args: argparse.Namespace):
    ruleset = _load_ruleset(args.ruleset)
    lexicon = _load_lexicon(args.lexicon)
    return ruleset, lexicon, _read_text(args.input)


def _budget_from(args: argparse.Namespace) -> Budget:
    return Budget(
        max_chars=args.budget, direction=-1 if args.direction == "neg" else 1
    )


# Local files carry no URL or sender, so a scoped ruleset applies only when
# its scope is unrestricted.
_LOCAL_METADATA = DocMetadata(source_url=None, sender=None)


def _cmd_transform(args: argparse.Namespace) -> int:
    if (args.budget is None) != (args.direction is None):
        raise _UsageError("--budget and --direction must be given together")
    ruleset, lexicon, text = _load_inputs(args)
    blocks, separators = split_paragraphs(text)
    if not scope_matches(ruleset.scope, _LOCAL_METADATA):
        _note(args, "ruleset scope does not match, emitting input unchanged")
        sys.stdout.write(text)
        return 0
    if args.budget is not None:
        rewritten, applied = rewrite_blocks(blocks, ruleset, lexicon, _budget_from(args))
        sys.stdout.write(join_paragraphs(rewritten, separators))
        _note(args, f"{applied} edits applied within budget {args.budget}")
        return 0
    transformed = apply_ruleset_blocks(blocks, ruleset)
    sys.stdout.write(join_paragraphs(transformed, separators))
    changed = sum(
        1 for before, after in zip(blocks, transformed) if after != before
    )
    dropped = sum(1 for after in transformed if after is None)
    _note(args, f"rewrote {changed} of {len(blocks)} blocks ({dropped} dropped)")
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    lexicon = _load_lexicon(args.lexicon)
    score = score_text(lexicon, _read_text(args.input))
    print(
        json.dumps(
            {
                "raw": score.raw,
                "normalized": score.normalized,
                "matched_terms": score.matched_terms,
                "token_count": score.token_count,
            },
            ensure_ascii=False,
        )
    )
    _note(args, f"{score.token_count} tokens, {score.matched_terms} matched")
    return 0


def _cmd_plan(args: argparse.Namespace) -> int:
    ruleset, lexicon, text = _load_inputs(args)
    blocks, _ = split_paragraphs(text)
    candidates = []
    if scope_matches(ruleset.scope, _LOCAL_METADATA):
        candidates = find_matches(ruleset, Document.from_blocks(blocks), lexicon)
    plan = plan_edits(candidates, _budget_from(args))
    print(serialize_plan(plan), end="")
    _note(
        args,
        f"selected {len(plan.selected)} of {len(candidates)} candidates, "
        f"delta {plan.total_delta:+g}, cost {plan.total_cost}",
    )
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    try:
        serve(config)
    except KeyboardInterrupt:
        pass
    return 0


def _cmd_detect(args: argparse.Namespace) -> int:
    source = _read_text(args.source)
    rendered = _read_text(args.rendered)
    ruleset = _load_ruleset(args.ruleset) if args.ruleset else None
    report = build_report(source, rendered, ruleset)
    print(serialize_report(report, classified=ruleset is not None), end="")
    classified = sum(1 for c in report.classifications if c is not None)
    _note(args, f"{len(report.edits)} edits, {classified} classified")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    ruleset = _load_ruleset(args.ruleset)
    print(serialize_ruleset(ruleset), end="")
    _note(args, f"{len(ruleset.rules)} rules")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atd",
        description="Rule-based affect rewriting, planning, proxying, and detection.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--verbose", action="store_true", help="print summaries to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    transform = sub.add_parser(
        "transform", parents=[common], help="rewrite a document with a ruleset"
    )
    transform.add_argument("--ruleset", required=True, help="ruleset JSON file")
    transform.add_argument("--lexicon", required=True, help="valence lexicon TSV file")
    transform.add_argument(
        "--in", dest="input", required=True, metavar="FILE", help="input text, - for stdin"
    )
    transform.add_argument("--budget", type=int, help="max changed characters")
    transform.add_argument(
        "--direction", choices=("neg", "pos"), help="push valence down or up"
    )
    transform.set_defaults(handler=_cmd_transform)

    score = sub.add_parser(
        "score", parents=[common], help="score a document against a lexicon"
    )
    score.add_argument("--lexicon", required=True, help="valence lexicon TSV file")
    score.add_argument(
        "--in", dest="input", required=True, metavar="FILE", help="input text, - for stdin"
    )
    score.set_defaults(handler=_cmd_score)

    plan = sub.add_parser(
        "plan", parents=[common], help="print the selected edits without applying them"
    )
    plan.add_argument("--ruleset", required=True, help="ruleset JSON file")
    plan.add_argument("--lexicon", required=True, help="valence lexicon TSV file")
    plan.add_argument(
        "--in", dest="input", required=True, metavar="FILE", help="input text, - for stdin"
    )
    plan.add_argument("--budget", type=int, required=True, help="max changed characters")
    plan.add_argument(
        "--direction", choices=("neg", "pos"), required=True,
        help="push valence down or up",
    )
    plan.set_defaults(handler=_cmd_plan)

    serve_cmd = sub.add_parser(
        "serve", parents=[common], help="run the rewriting proxy"
    )
    serve_cmd.add_argument("--config", required=True, help="proxy TOML config file")
    serve_cmd.set_defaults(handler=_cmd_serve)

    detect = sub.add_parser(
        "detect", parents=[common], help="diff a rendered text against its source"
    )
    detect.add_argument("--source", required=True, help="trusted source text")
    detect.add_argument("--rendered", required=True, help="text as displayed")
    detect.add_argument("--ruleset", help="classify edits against this ruleset")
    detect.set_defaults(handler=_cmd_detect)

    export = sub.add_parser(
        "export", parents=[common], help="re-emit a ruleset in canonical JSON"
    )
    export.add_argument("--ruleset", required=True, help="ruleset JSON file")
    export.set_defaults(handler=_cmd_export)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except _UsageError as exc:
        _diagnostic(str(exc))
        return 2
    except AtdError as exc:
        _diagnostic(str(exc))
        return 1
    except OSError as exc:
        if getattr(exc, "filename", None):
            _diagnostic(f"{exc.filename}: {exc.strerror}")
        else:
            _diagnostic(str(exc))
        return 1
    except KeyboardInterrupt:
        return 130


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
