"""Command-line interface.

Exit codes: 0 success (for ``match``: at least one instance), 1 no instance
found by ``match``, 2 bad input (parse errors, malformed patterns,
unreadable history).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .diff_engine import extract_changes, render_change
from .hunking import hunks_for
from .matcher import classify_revision
from .miner import CorpusFormatError, MiningOptions, RepositoryAccessError, mine
from .patterns import PatternSyntaxError, PatternValidationError, builtin_catalog, load_patterns
from .syntax import ParseError, parse_source

PATTERNS_ENV = "ASTCHANGE_PATTERNS"


@dataclass
class CliConfig:
    subcommand: str
    inputs: list[str]
    pattern_files: list[str] = field(default_factory=list)
    filter: str = "all"
    format: str = "table"
    workers: int = 1
    extensions: tuple[str, ...] = (".java",)
    verbosity: int = 0


class UsageError(Exception):
    pass


def load_catalog(pattern_files: list[str]):
    if pattern_files:
        defs = []
        for f in pattern_files:
            defs.extend(load_patterns(f))
        return defs
    env = os.environ.get(PATTERNS_ENV)
    if env:
        return load_patterns(env)
    return builtin_catalog()


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _diff(old_path: str, new_path: str, revision: str | None = None):
    old = parse_source(_read(old_path), old_path)
    new = parse_source(_read(new_path), new_path)
    changes = extract_changes(old, new)
    return changes, hunks_for(changes, revision)


def cmd_diff(cfg: CliConfig, out) -> int:
    changes, hunks = _diff(*cfg.inputs)
    if cfg.format == "json":
        json.dump({"changes": changes.to_json(), "hunks": [h.to_json() for h in hunks]}, out, indent=2)
        out.write("\n")
        return 0
    if not hunks:
        print("no changes", file=out)
        return 0
    for h in hunks:
        print(f"hunk {h.index} (line hunks {', '.join(map(str, sorted(h.line_hunks)))})", file=out)
        for c in h.changes:
            print(f"  {render_change(c)}  [{c.side.value} {c.anchor_span[0]}-{c.anchor_span[1]}]", file=out)
    return 0


def cmd_match(cfg: CliConfig, out) -> int:
    catalog = load_catalog(cfg.pattern_files)
    _, hunks = _diff(*cfg.inputs)
    found = classify_revision(catalog, hunks)
    names = {p.id: p.name for p in catalog}
    if cfg.format == "json":
        json.dump([i.to_json() for i in found], out, indent=2)
        out.write("\n")
    elif not found:
        print("no instances", file=out)
    else:
        for inst in found:
            mapping = ", ".join(f"{i}->{j}" for i, j in enumerate(inst.assignment.mapping))
            print(f"{inst.pattern_id}\t{names[inst.pattern_id]}\thunk {inst.hunk_id[1]}\t{{{mapping}}}", file=out)
    return 0 if found else 1


def cmd_mine(cfg: CliConfig, out) -> int:
    catalog = load_catalog(cfg.pattern_files)
    options = MiningOptions(filter=cfg.filter, extensions=cfg.extensions, workers=cfg.workers)
    report = mine(cfg.inputs[0], catalog, options)
    if cfg.format == "json":
        out.write(report.dumps() + "\n")
    else:
        print(report.table(), file=out)
        print(
            f"\ncommits {report.commits} (analyzed {report.filtered_commits}), "
            f"revisions {report.revisions} (analyzed {report.filtered_revisions}, skipped {report.skipped})",
            file=out,
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="astchange", description="Find change pattern instances in AST diffs.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("diff", help="show the AST changes between two files, grouped by hunk")
    p.add_argument("old")
    p.add_argument("new")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("match", help="list pattern instances between two files")
    p.add_argument("old")
    p.add_argument("new")
    p.add_argument("--patterns", action="append", default=[], metavar="FILE")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("mine", help="count pattern instances over a history")
    p.add_argument("source", help="git repository or corpus directory")
    p.add_argument("--filter", choices=("all", "bugfix"), default="all")
    p.add_argument("--ext", action="append", default=None, metavar=".EXT")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--patterns", action="append", default=[], metavar="FILE")
    return parser


def parse_config(argv: list[str] | None = None) -> CliConfig:
    args = build_parser().parse_args(argv)
    if args.subcommand == "mine":
        if args.workers < 1:
            raise UsageError("--workers must be >= 1")
        return CliConfig(
            "mine", [args.source], args.patterns, args.filter, args.format, args.workers,
            tuple(args.ext) if args.ext else (".java",), args.verbose,
        )
    return CliConfig(
        args.subcommand, [args.old, args.new], getattr(args, "patterns", []),
        format=args.format, verbosity=args.verbose,
    )


COMMANDS = {"diff": cmd_diff, "match": cmd_match, "mine": cmd_mine}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"astchange: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.WARNING - 10 * cfg.verbosity, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[cfg.subcommand](cfg, out)
    except ParseError as exc:
        print(f"astchange: parse error: {exc}", file=sys.stderr)
    except (PatternSyntaxError, PatternValidationError) as exc:
        print(f"astchange: pattern error: {exc}", file=sys.stderr)
    except (RepositoryAccessError, CorpusFormatError, UsageError, OSError) as exc:
        print(f"astchange: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
