"""Mining version histories for pattern instances.

Two history sources are supported: a git repository, read through the git
command-line plumbing, and a corpus directory laid out as::

    <commit-id>/message.txt
    <commit-id>/old/<path>
    <commit-id>/new/<path>
"""

from __future__ import annotations

import json
import logging
import shutil
import subprocess
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .diff_engine import extract_changes
from .hunking import hunks_for
from .matcher import classify_revision
from .patterns import PatternDefinition
from .syntax import ParseError, parse_source

log = logging.getLogger(__name__)

BUGFIX_KEYWORDS = ("bug", "fix", "patch")


class RepositoryAccessError(Exception):
    pass


class CorpusFormatError(Exception):
    pass


@dataclass(frozen=True)
class Commit:
    id: str
    message: str
    parent_id: str | None
    # (path, old blob ref, new blob ref) for modified files only
    changed_files: tuple[tuple[str, str, str], ...] = ()


@dataclass(frozen=True)
class RevisionPair:
    commit_id: str
    path: str
    old_text: str
    new_text: str


@dataclass
class MiningOptions:
    filter: str = "all"  # all | bugfix
    extensions: tuple[str, ...] = (".java",)
    workers: int = 1

    def __post_init__(self):
        if self.filter not in ("all", "bugfix"):
            raise ValueError(f"unknown filter {self.filter!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class MiningReport:
    """Per-pattern instance counts and revision accounting.

    Reports form a commutative monoid under ``+``; instance lists are kept
    sorted by revision so the merge order does not show in the result.
    """

    counts: dict[str, int] = field(default_factory=dict)
    names: dict[str, str] = field(default_factory=dict)
    commits: int = 0
    filtered_commits: int = 0
    revisions: int = 0
    filtered_revisions: int = 0
    skipped: int = 0
    skipped_files: list[dict] = field(default_factory=list)
    instances: list[dict] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: MiningReport) -> MiningReport:
        return MiningReport.combine([self, other])

    __add__ = merge

    @classmethod
    def combine(cls, reports: Sequence[MiningReport]) -> MiningReport:
        out = MiningReport()
        for r in reports:
            for k, v in r.counts.items():
                out.counts[k] = out.counts.get(k, 0) + v
            out.names.update(r.names)
            out.commits += r.commits
            out.filtered_commits += r.filtered_commits
            out.revisions += r.revisions
            out.filtered_revisions += r.filtered_revisions
            out.skipped += r.skipped
            out.skipped_files.extend(r.skipped_files)
            out.instances.extend(r.instances)
        out.skipped_files.sort(key=_file_key)
        out.instances.sort(key=_instance_key)
        return out

    def rows(self) -> list[tuple[str, str, int]]:
        """(name, id, count) rows, largest count first, ties by id."""
        ids = sorted(self.counts, key=lambda k: (-self.counts[k], k))
        return [(self.names.get(k, k), k, self.counts[k]) for k in ids]

    def to_json(self) -> dict:
        return {
            "counts": dict(sorted(self.counts.items())),
            "total": self.total,
            "commits": self.commits,
            "filtered_commits": self.filtered_commits,
            "revisions": self.revisions,
            "filtered_revisions": self.filtered_revisions,
            "skipped": self.skipped,
            "skipped_files": [_public(d) for d in self.skipped_files],
            "instances": [_public(d) for d in self.instances],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def table(self) -> str:
        rows = self.rows()
        labels = [f"{name}-{pid}" for name, pid, _ in rows]
        width = max([len(s) for s in labels] + [len("Pattern name"), len("Total")])
        cwidth = max([len(str(c)) for *_, c in rows] + [len(str(self.total)), len("Abs")])
        lines = [f"{'Pattern name':<{width}}  {'Abs':>{cwidth}}", "-" * (width + 2 + cwidth)]
        for label, (_, _, count) in zip(labels, rows):
            lines.append(f"{label:<{width}}  {count:>{cwidth}}")
        lines.append("-" * (width + 2 + cwidth))
        lines.append(f"{'Total':<{width}}  {self.total:>{cwidth}}")
        return "\n".join(lines)


def _public(d: dict) -> dict:
    return {k: v for k, v in d.items() if k not in ("seq", "rank")}


def _file_key(d: dict):
    return (d.get("seq", 0), d.get("path", ""))


def _instance_key(d: dict):
    return (d.get("seq", 0), d.get("path", ""), d.get("hunk_index", 0), d.get("rank", 0))


def filter_bugfix(c: Commit) -> bool:
    message = c.message.lower()
    return any(k in message for k in BUGFIX_KEYWORDS)


# --------------------------------------------------------------------------
# history sources

class CorpusHistory:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        if not self.root.is_dir():
            raise CorpusFormatError(f"{self.root} is not a directory")

    def commits(self) -> Iterator[Commit]:
        for d in sorted(p for p in self.root.iterdir() if p.is_dir()):
            msg = d / "message.txt"
            if not msg.is_file():
                raise CorpusFormatError(f"{d} has no message.txt")
            old_dir, new_dir = d / "old", d / "new"
            old_files = _relative_files(old_dir)
            new_files = _relative_files(new_dir)
            changed = tuple(
                (rel, str(old_dir / rel), str(new_dir / rel))
                for rel in sorted(old_files & new_files)
            )
            parent = d / "parent.txt"
            parent_id = parent.read_text(encoding="utf-8").strip() if parent.is_file() else None
            yield Commit(d.name, msg.read_text(encoding="utf-8"), parent_id, changed)

    def read_blob(self, ref: str) -> str:
        return Path(ref).read_text(encoding="utf-8", errors="replace")


def _relative_files(base: Path) -> set[str]:
    if not base.is_dir():
        return set()
    return {p.relative_to(base).as_posix() for p in base.rglob("*") if p.is_file()}


class GitHistory:
    def __init__(self, repo: str | Path):
        self.repo = Path(repo)
        if shutil.which("git") is None:
            raise RepositoryAccessError("git executable not found")
        try:
            self._git("rev-parse", "--git-dir")
        except RepositoryAccessError as exc:
            raise RepositoryAccessError(f"{repo} is not a git repository: {exc}") from None

    def _git(self, *args: str) -> str:
        proc = subprocess.run(
            ["git", "-C", str(self.repo), *args],
            capture_output=True,
            text=True,
            encoding="utf-8",
            errors="replace",
        )
        if proc.returncode != 0:
            raise RepositoryAccessError(proc.stderr.strip() or f"git {args[0]} failed")
        return proc.stdout

    def commits(self) -> Iterator[Commit]:
        try:
            self._git("rev-parse", "--verify", "HEAD")
        except RepositoryAccessError:
            return  # no commits yet
        out = self._git("log", "--topo-order", "--reverse", "--format=%H%x00%P%x00%B%x1e", "HEAD")
        for record in out.split("\x1e"):
            record = record.lstrip("\n")
            if not record:
                continue
            sha, parents, message = record.split("\x00", 2)
            parent = parents.split()[0] if parents.split() else None
            changed: tuple = ()
            if parent is not None:
                changed = tuple(self._modified(parent, sha))
            yield Commit(sha, message.rstrip("\n"), parent, changed)

    def _modified(self, parent: str, sha: str) -> Iterator[tuple[str, str, str]]:
        out = self._git("diff-tree", "-r", "--no-renames", "-z", parent, sha)
        fields = out.split("\x00")
        i = 0
        while i + 1 < len(fields):
            meta, path = fields[i], fields[i + 1]
            i += 2
            parts = meta.lstrip(":").split()
            if len(parts) < 5:
                continue
            old_sha, new_sha, status = parts[2], parts[3], parts[4]
            if status == "M":
                yield path, old_sha, new_sha

    def read_blob(self, ref: str) -> str:
        return self._git("cat-file", "blob", ref)


def open_history(source: str | Path):
    source = Path(source)
    if not source.exists():
        raise CorpusFormatError(f"{source} does not exist")
    if (source / ".git").exists() or ((source / "HEAD").is_file() and (source / "objects").is_dir()):
        return GitHistory(source)
    return CorpusHistory(source)


def ingest_history(source: str | Path) -> Iterator[Commit]:
    yield from open_history(source).commits()


# --------------------------------------------------------------------------
# pipeline

def analyze_pair(pair: RevisionPair, catalog: Sequence[PatternDefinition]):
    """Parse, diff, group and classify one revision pair."""
    old = parse_source(pair.old_text, pair.path)
    new = parse_source(pair.new_text, pair.path)
    changes = extract_changes(old, new)
    hunks = hunks_for(changes, pair.commit_id)
    return classify_revision(catalog, hunks)


def _work(args) -> dict:
    seq, pair, catalog = args
    try:
        found = analyze_pair(pair, catalog)
    except ParseError as exc:
        return {"seq": seq, "error": {"seq": seq, "commit": pair.commit_id, "path": pair.path, "error": str(exc)}}
    rank = {p.id: i for i, p in enumerate(catalog)}
    out = []
    for inst in found:
        d = inst.to_json()
        d["seq"] = seq
        d["rank"] = rank[inst.pattern_id]
        out.append(d)
    return {"seq": seq, "instances": out}


def mine(
    source: str | Path,
    catalog: Sequence[PatternDefinition],
    options: MiningOptions | None = None,
) -> MiningReport:
    options = options or MiningOptions()
    history = open_history(source)
    report = MiningReport(counts={p.id: 0 for p in catalog}, names={p.id: p.name for p in catalog})
    pairs: list[tuple[int, RevisionPair]] = []
    for commit in history.commits():
        report.commits += 1
        files = [f for f in commit.changed_files if f[0].endswith(tuple(options.extensions))]
        selected = options.filter == "all" or filter_bugfix(commit)
        if selected:
            report.filtered_commits += 1
        for path, old_ref, new_ref in files:
            old_text, new_text = history.read_blob(old_ref), history.read_blob(new_ref)
            if old_text == new_text:
                continue
            report.revisions += 1
            if selected:
                report.filtered_revisions += 1
                pairs.append((len(pairs), RevisionPair(commit.id, path, old_text, new_text)))

    jobs = [(seq, pair, list(catalog)) for seq, pair in pairs]
    if options.workers > 1 and len(jobs) > 1:
        chunk = max(1, len(jobs) // (options.workers * 4))
        with ProcessPoolExecutor(max_workers=options.workers) as pool:
            results = list(pool.map(_work, jobs, chunksize=chunk))
    else:
        results = [_work(job) for job in jobs]

    partials = [report]
    for res in results:
        part = MiningReport(counts={p.id: 0 for p in catalog})
        if "error" in res:
            part.skipped = 1
            part.skipped_files = [res["error"]]
            log.info("skipped %s: %s", res["error"]["path"], res["error"]["error"])
        else:
            part.instances = res["instances"]
            for d in res["instances"]:
                part.counts[d["pattern_id"]] += 1
        partials.append(part)
    return MiningReport.combine(partials)
