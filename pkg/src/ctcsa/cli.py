"""Command line entry points.

Exit codes: 0 when every check passes (or every sentence holds), 1 when a
check fails or a sentence is false, 2 for configuration and usage problems.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .errors import ConfigError, ParseError, RecipeError, WorkbenchError
from .harness import (
    Config,
    SUITE_NAMES,
    default_config,
    emit_json,
    emit_markdown,
    failing_rows,
    group_info,
    load_config,
    run_all,
    run_suite,
)
from .logic import BUILTIN_NAMES, builtin, evaluate, parse
from .recipes import build_group, normalize_recipe


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctcsa",
        description="Finite-group workbench for commutative transitivity "
        "and conjugate separation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    suite = sub.add_parser("suite", help="run one named check suite")
    suite.add_argument("name", choices=SUITE_NAMES)
    _add_report_args(suite)

    corpus = sub.add_parser("corpus", help="corpus-wide operations")
    corpus_sub = corpus.add_subparsers(dest="corpus_command", required=True)
    corpus_run = corpus_sub.add_parser("run", help="run every suite")
    _add_report_args(corpus_run)

    info = sub.add_parser("info", help="summarize one group")
    info.add_argument("recipe")
    info.add_argument("--config", metavar="FILE")

    ev = sub.add_parser("eval", help="evaluate sentences over a group")
    src = ev.add_mutually_exclusive_group(required=True)
    src.add_argument("--sentence", action="append", default=None,
                     help="sentence text or builtin name; repeatable")
    src.add_argument("--sentence-file", metavar="FILE",
                     help="one sentence per line, '#' starts a comment")
    ev.add_argument("--group", required=True, metavar="RECIPE")
    ev.add_argument("--config", metavar="FILE")
    return parser


def _add_report_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="FILE")
    sub.add_argument("--format", choices=("json", "markdown"), default="json")
    sub.add_argument("--out", metavar="FILE")


def _config_from_args(args) -> Config:
    if args.config:
        return load_config(args.config)
    return default_config()


def _write_report(results, config: Config, args) -> None:
    if args.format == "markdown":
        text = emit_markdown(results, config)
    else:
        text = emit_json(results, config)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            raise ConfigError(f"cannot write report to {args.out!r}: {e}")
    else:
        sys.stdout.write(text)


def _print_failures(failures) -> None:
    for row in failures:
        if row.error:
            reason = row.error
        elif row.computed != row.expected:
            reason = f"expected {row.expected}, computed {row.computed}"
        else:
            reason = "refuting row not listed in known_refutations"
        print(f"FAIL {row.suite}/{row.subject}/{row.check}: {reason}",
              file=sys.stderr)


def _cmd_suite(args) -> int:
    config = _config_from_args(args)
    rows = run_suite(args.name, config)
    _write_report(rows, config, args)
    failures = failing_rows(rows, config)
    _print_failures(failures)
    return 1 if failures else 0


def _cmd_corpus_run(args) -> int:
    config = _config_from_args(args)
    results = run_all(config)
    _write_report(results, config, args)
    all_rows = [r for rows in results.values() for r in rows]
    failures = failing_rows(all_rows, config)
    _print_failures(failures)
    return 1 if failures else 0


def _cmd_info(args) -> int:
    config = _config_from_args(args)
    info = group_info(args.recipe, config)
    print(json.dumps(info, indent=2, sort_keys=True))
    return 0


def _read_sentences(args) -> list:
    if args.sentence is not None:
        return list(args.sentence)
    sentences = []
    with open(args.sentence_file, "r", encoding="utf-8") as fh:
        for line in fh:
            text = line.split("#", 1)[0].strip()
            if text:
                sentences.append(text)
    return sentences


def _sentences_for(text: str) -> list:
    if text in BUILTIN_NAMES:
        got = builtin(text)
        return got if isinstance(got, list) else [got]
    return [parse(text)]


def _cmd_eval(args) -> int:
    config = _config_from_args(args)
    try:
        texts = _read_sentences(args)
    except OSError as e:
        raise ConfigError(f"cannot read sentence file: {e}")
    if not texts:
        raise ConfigError("no sentences to evaluate")
    group = build_group(normalize_recipe(args.group), order_cap=config.caps.order_cap)
    all_true = True
    for text in texts:
        for sentence in _sentences_for(text):
            result = evaluate(sentence, group)
            record = {
                "group": group.provenance,
                "sentence": text,
                "verdict": result.verdict,
                "assignment": None,
            }
            if result.assignment is not None:
                record["assignment"] = {
                    var: {"index": idx, "label": group.labels[idx]}
                    for var, idx in result.assignment.items()
                }
            print(json.dumps(record, sort_keys=True))
            all_true = all_true and result.verdict
    return 0 if all_true else 1


def main(argv: Optional[list] = None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        if args.command == "suite":
            return _cmd_suite(args)
        if args.command == "corpus":
            return _cmd_corpus_run(args)
        if args.command == "info":
            return _cmd_info(args)
        if args.command == "eval":
            return _cmd_eval(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, RecipeError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except WorkbenchError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
