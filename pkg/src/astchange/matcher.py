"""Deciding whether an AST hunk is an instance of a change pattern.

Classification runs in three phases: map the pattern's micro-patterns onto
hunk changes in order, check the relation constraints on the mapped
changes, and reject the hunk if an undesired change is present. The search
backtracks over order-preserving mappings and returns the leftmost one that
passes all three phases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diff_engine import SourceCodeChange
from .hunking import AstHunk
from .patterns import MicroPattern, PatternDefinition, RelationConstraint, RelationKind


@dataclass(frozen=True)
class MatchAssignment:
    pattern_id: str
    mapping: tuple[int, ...]  # mapping[i] = hunk position of micro-pattern i


@dataclass(frozen=True)
class PatternInstance:
    pattern_id: str
    hunk_id: tuple[str, int]
    revision: str | None
    assignment: MatchAssignment

    def to_json(self) -> dict:
        return {
            "pattern_id": self.pattern_id,
            "path": self.hunk_id[0],
            "commit": self.revision,
            "hunk_index": self.hunk_id[1],
            "mapping": list(self.assignment.mapping),
        }


def micro_matches(mp: MicroPattern, c: SourceCodeChange) -> bool:
    return (
        mp.ct is c.ct
        and (mp.et is None or c.et in mp.et)
        and (mp.pt is None or c.pt in mp.pt)
    )


def relation_holds(r: RelationConstraint, changes: Sequence[SourceCodeChange], mapping: Sequence[int]) -> bool:
    a, b = changes[mapping[r.subject]], changes[mapping[r.object]]
    if r.kind is RelationKind.PARENT_OF:
        return b.parent_id == a.node_id
    return a.parent_id == b.parent_id


def undesired_present(
    entries: Sequence[MicroPattern], changes: Sequence[SourceCodeChange], mapping: Sequence[int]
) -> bool:
    for u in entries:
        anchor = changes[mapping[u.scope]] if u.scope is not None else None
        for c in changes:
            if not micro_matches(u, c):
                continue
            if anchor is None:
                return True
            # scoped: the undesired change touches the anchor's parent or a child of it
            if c.node_id == anchor.parent_id or c.parent_id == anchor.node_id:
                return True
    return False


def find_mapping(p: PatternDefinition, changes: Sequence[SourceCodeChange]) -> tuple[int, ...] | None:
    L = p.changes
    k, n = len(L), len(changes)
    if k > n:
        return None
    if undesired_present([u for u in p.undesired if u.scope is None], changes, ()):
        return None
    candidates = [[j for j in range(n) if micro_matches(m, changes[j])] for m in L]
    # relations whose later index is i are checked as soon as i is placed
    checks: list[list[RelationConstraint]] = [[] for _ in range(k)]
    for r in p.relations:
        checks[max(r.subject, r.object)].append(r)
    scoped = [u for u in p.undesired if u.scope is not None]
    mapping: list[int] = []

    def search(i: int, lo: int) -> bool:
        if i == k:
            return not undesired_present(scoped, changes, mapping)
        for j in candidates[i]:
            # leave room for the remaining micro-patterns
            if j < lo or j > n - (k - i):
                continue
            mapping.append(j)
            if all(relation_holds(r, changes, mapping) for r in checks[i]) and search(i + 1, j + 1):
                return True
            mapping.pop()
        return False

    return tuple(mapping) if search(0, 0) else None


def classify_hunk(p: PatternDefinition, h: AstHunk) -> PatternInstance | None:
    mapping = find_mapping(p, h.changes)
    if mapping is None:
        return None
    return PatternInstance(p.id, h.id, h.revision, MatchAssignment(p.id, mapping))


def classify_revision(catalog: Sequence[PatternDefinition], hunks: Sequence[AstHunk]) -> list[PatternInstance]:
    found = []
    for h in hunks:
        for p in catalog:
            inst = classify_hunk(p, h)
            if inst is not None:
                found.append(inst)
    return found
