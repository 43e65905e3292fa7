"""Line hunks and their AST counterpart.

An AST hunk gathers the changes that touch the same line hunk, plus moves
that land under the same new parent. Groups are the transitive closure of
both rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .diff_engine import MOVE_TYPES, SourceCodeChange, Side, render_change


class UnanchoredChange(Exception):
    """An AST change was found for a revision pair with no textual change."""


@dataclass(frozen=True)
class LineHunk:
    """A run of consecutive changed lines.

    Ranges are ``(start, length)`` with 1-based starts. An empty range
    starts at the line that follows the gap, so a deletion of old line 5
    has ``new_range == (5, 0)``.
    """

    old_range: tuple[int, int]
    new_range: tuple[int, int]

    def side_range(self, side: Side) -> tuple[int, int]:
        return self.old_range if side is Side.OLD else self.new_range


@dataclass
class AstHunk:
    id: tuple[str, int]
    changes: list[SourceCodeChange]
    line_hunks: frozenset[int] = field(default_factory=frozenset)
    revision: str | None = None

    @property
    def path(self) -> str:
        return self.id[0]

    @property
    def index(self) -> int:
        return self.id[1]

    def to_json(self) -> dict:
        return {
            "id": [self.id[0], self.id[1]],
            "line_hunks": sorted(self.line_hunks),
            "changes": [render_change(c) for c in self.changes],
        }


def _myers(a: Sequence, b: Sequence) -> list[tuple[str, int, int]]:
    """Shortest edit script as a list of ('=', i, j), ('-', i, _), ('+', _, j)."""
    n, m = len(a), len(b)
    max_d = n + m
    offset = max_d + 1
    v = [0] * (2 * max_d + 3)
    trace = []
    for d in range(max_d + 1):
        trace.append(v[:])
        for k in range(-d, d + 1, 2):
            if k == -d or (k != d and v[offset + k - 1] < v[offset + k + 1]):
                x = v[offset + k + 1]
            else:
                x = v[offset + k - 1] + 1
            y = x - k
            while x < n and y < m and a[x] == b[y]:
                x += 1
                y += 1
            v[offset + k] = x
            if x >= n and y >= m:
                return _backtrack(trace, a, b, d, offset)
    raise AssertionError("unreachable")


def _backtrack(trace, a, b, d_end, offset) -> list[tuple[str, int, int]]:
    x, y = len(a), len(b)
    ops: list[tuple[str, int, int]] = []
    for d in range(d_end, -1, -1):
        v = trace[d]
        k = x - y
        if d == 0:
            while x > 0 and y > 0:
                x, y = x - 1, y - 1
                ops.append(("=", x, y))
            break
        if k == -d or (k != d and v[offset + k - 1] < v[offset + k + 1]):
            prev_k = k + 1
        else:
            prev_k = k - 1
        prev_x = v[offset + prev_k]
        prev_y = prev_x - prev_k
        while x > prev_x and y > prev_y:
            x, y = x - 1, y - 1
            ops.append(("=", x, y))
        if x == prev_x:
            ops.append(("+", x, prev_y))
        else:
            ops.append(("-", prev_x, y))
        x, y = prev_x, prev_y
    ops.reverse()
    return ops


def line_diff(old_lines: Sequence[str], new_lines: Sequence[str]) -> list[LineHunk]:
    """Zero-context hunks of a shortest (LCS-maximal) line edit script."""
    # trim the common prefix and suffix before running the O(ND) search
    lo = 0
    while lo < len(old_lines) and lo < len(new_lines) and old_lines[lo] == new_lines[lo]:
        lo += 1
    hi_o, hi_n = len(old_lines), len(new_lines)
    while hi_o > lo and hi_n > lo and old_lines[hi_o - 1] == new_lines[hi_n - 1]:
        hi_o -= 1
        hi_n -= 1
    ops = _myers(old_lines[lo:hi_o], new_lines[lo:hi_n])

    hunks: list[LineHunk] = []
    i = j = 0
    k = 0
    while k < len(ops):
        if ops[k][0] == "=":
            i, j = i + 1, j + 1
            k += 1
            continue
        start_i, start_j = i, j
        while k < len(ops) and ops[k][0] != "=":
            if ops[k][0] == "-":
                i += 1
            else:
                j += 1
            k += 1
        hunks.append(LineHunk((lo + start_i + 1, i - start_i), (lo + start_j + 1, j - start_j)))
    return hunks


def _intersects(span: tuple[int, int] | None, rng: tuple[int, int]) -> bool:
    if span is None or rng[1] == 0:
        return False
    return span[0] <= rng[0] + rng[1] - 1 and rng[0] <= span[1]


def _distance(span: tuple[int, int], rng: tuple[int, int]) -> int:
    lo, hi = rng[0], rng[0] + max(rng[1], 1) - 1
    if span[1] < lo:
        return lo - span[1]
    if span[0] > hi:
        return span[0] - hi
    return 0


def anchor_hunks(change: SourceCodeChange, hunks: Sequence[LineHunk]) -> list[int]:
    """Indices of the line hunks a change refers to.

    The anchoring side is tried first, then the span on the other side (for
    matched nodes). A change that touches no changed line on either side,
    such as a statement kept verbatim while its parent changes, is
    attached to the nearest hunk on its anchoring side.
    """
    if not hunks:
        raise UnanchoredChange(render_change(change))
    other = Side.OLD if change.side is Side.NEW else Side.NEW
    hit = [i for i, h in enumerate(hunks) if _intersects(change.anchor_span, h.side_range(change.side))]
    if not hit and change.other_span is not None:
        hit = [i for i, h in enumerate(hunks) if _intersects(change.other_span, h.side_range(other))]
    if not hit:
        best = min(range(len(hunks)), key=lambda i: (_distance(change.anchor_span, hunks[i].side_range(change.side)), i))
        hit = [best]
    return hit


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def group_ast_hunks(
    changes: Sequence[SourceCodeChange],
    hunks: Sequence[LineHunk],
    path: str = "",
    revision: str | None = None,
) -> list[AstHunk]:
    changes = list(changes)
    if not changes:
        return []
    n_h = len(hunks)
    # nodes 0..n_h-1 are line hunks, n_h.. are changes
    uf = _UnionFind(n_h + len(changes))
    anchors: list[list[int]] = []
    for ci, change in enumerate(changes):
        hit = anchor_hunks(change, hunks)
        anchors.append(hit)
        for h in hit:
            uf.union(n_h + ci, h)
    first_move: dict[int, int] = {}
    for ci, change in enumerate(changes):
        if change.ct in MOVE_TYPES:
            j = first_move.setdefault(change.parent_id, ci)
            uf.union(n_h + ci, n_h + j)

    groups: dict[int, list[int]] = {}
    for ci in range(len(changes)):
        groups.setdefault(uf.find(n_h + ci), []).append(ci)
    ordered = sorted(groups.values(), key=lambda g: g[0])
    result = []
    for index, members in enumerate(ordered):
        covered = frozenset(h for ci in members for h in anchors[ci])
        result.append(AstHunk((path, index), [changes[ci] for ci in members], covered, revision))
    return result


def hunks_for(change_list, revision: str | None = None) -> list[AstHunk]:
    """Line-diff a ChangeList's two units and group its changes."""
    old, new = change_list.old_unit, change_list.new_unit
    line_hunks = line_diff(old.source_lines, new.source_lines)
    return group_ast_hunks(change_list.changes, line_hunks, new.path, revision)
