import random

import pytest
from hypothesis import given, strategies as st

from astchange.diff_engine import MOVE_TYPES, ChangeType as C, SourceCodeChange, Side, extract_changes
from astchange.hunking import LineHunk, UnanchoredChange, anchor_hunks, group_ast_hunks, hunks_for, line_diff
from astchange.synth import random_pair, random_program, render
from astchange.syntax import EntityKind as K, parse_source
from oracles import fixpoint_groups

seeds = st.integers(min_value=0, max_value=10**6)


def lcs_length(a, b) -> int:
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def test_identical_lines():
    assert line_diff(["a", "b"], ["a", "b"]) == []


def test_single_deleted_line():
    old = [f"l{i}" for i in range(1, 9)]
    new = old[:4] + old[5:]
    assert line_diff(old, new) == [LineHunk((5, 1), (5, 0))]


def test_insert_and_replace():
    assert line_diff(["a", "b", "c"], ["a", "x", "b", "y"]) == [LineHunk((2, 0), (2, 1)), LineHunk((3, 1), (4, 1))]


@given(st.lists(st.sampled_from("abc"), max_size=12), st.lists(st.sampled_from("abc"), max_size=12))
def test_line_diff_is_lcs_optimal(a, b):
    hunks = line_diff(a, b)
    deleted = sum(h.old_range[1] for h in hunks)
    inserted = sum(h.new_range[1] for h in hunks)
    common = lcs_length(a, b)
    assert len(a) - deleted == common == len(b) - inserted
    # hunks are ordered, disjoint and separated by at least one unchanged line
    for h, k in zip(hunks, hunks[1:]):
        assert h.old_range[0] + h.old_range[1] < k.old_range[0]
        assert h.new_range[0] + h.new_range[1] < k.new_range[0]
    # unchanged lines outside the hunks really are equal
    i = j = 0
    for h in hunks + [LineHunk((len(a) + 1, 0), (len(b) + 1, 0))]:
        while i + 1 < h.old_range[0]:
            assert a[i] == b[j]
            i, j = i + 1, j + 1
        assert j + 1 == h.new_range[0]
        i, j = i + h.old_range[1], j + h.new_range[1]


def _pair(fixtures, name):
    old = parse_source((fixtures / f"{name}_old.java").read_text())
    new = parse_source((fixtures / f"{name}_new.java").read_text())
    return extract_changes(old, new)


def test_else_removal_one_line_hunk_one_ast_hunk(fixtures):
    changes = _pair(fixtures, "else_removal")
    lines = line_diff(changes.old_unit.source_lines, changes.new_unit.source_lines)
    assert lines == [LineHunk((7, 2), (7, 0))]
    (hunk,) = hunks_for(changes)
    assert hunk.changes == list(changes)
    assert hunk.line_hunks == {0}


def test_comment_only_edit():
    old = "class A {\n  void f() {\n    x = 1;\n  }\n}\n"
    new = "class A {\n  void f() {\n    // set x\n    x = 1;\n  }\n}\n"
    changes = extract_changes(parse_source(old), parse_source(new))
    assert len(line_diff(old.splitlines(), new.splitlines())) == 1
    assert hunks_for(changes) == []


MOVES_OLD = """\
class A {
    void f() {
        if (a) {
            one();
            keep1();
            keep2();
            keep3();
            keep4();
            two();
        }
        done();
    }
}
"""
MOVES_NEW = """\
class A {
    void f() {
        if (a) {
            keep1();
            keep2();
            keep3();
            keep4();
        }
        done();
        while (b) {
            one();
            two();
        }
    }
}
"""


def test_moves_into_one_parent_merge():
    changes = extract_changes(parse_source(MOVES_OLD), parse_source(MOVES_NEW))
    moves = [c for c in changes if c.ct is C.STATEMENT_PARENT_CHANGE]
    assert [m.node_value for m in moves] == ["one();", "two();"]
    old_lines, new_lines = MOVES_OLD.splitlines(), MOVES_NEW.splitlines()
    line_hunks = line_diff(old_lines, new_lines)
    # the two moved statements sit in line hunks that are far apart in the old file
    assert len(line_hunks) >= 2
    hunks = hunks_for(changes)
    assert len(hunks) == 1
    anchors = [set(anchor_hunks(c, line_hunks)) for c in changes]
    parents = [c.parent_id if c.ct in MOVE_TYPES else None for c in changes]
    assert len(fixpoint_groups(anchors, parents)) == 1


def test_no_line_hunks_but_changes_is_an_error():
    change = SourceCodeChange(C.STATEMENT_INSERT, K.IF, K.METHOD_DECLARATION, Side.NEW, (3, 3))
    with pytest.raises(UnanchoredChange):
        group_ast_hunks([change], [])


def test_empty_change_list_gives_no_hunks():
    assert group_ast_hunks([], [LineHunk((1, 1), (1, 1))]) == []


def _groups(hunks, changes):
    index = {id(c): i for i, c in enumerate(changes)}
    return sorted((frozenset(index[id(c)] for c in h.changes) for h in hunks), key=min)


@given(seeds, st.booleans())
def test_hunk_bound_and_partition(seed, layout):
    old, new, _ = random_pair(seed, layout=layout)
    changes = extract_changes(parse_source(old), parse_source(new))
    line_hunks = line_diff(changes.old_unit.source_lines, changes.new_unit.source_lines)
    hunks = hunks_for(changes)
    assert len(hunks) <= len(line_hunks)
    flat = [c for h in hunks for c in h.changes]
    assert sorted(map(id, flat)) == sorted(map(id, changes))
    for h in hunks:
        assert h.changes
        positions = [next(i for i, c in enumerate(changes) if c is x) for x in h.changes]
        assert positions == sorted(positions)


@given(seeds)
def test_union_find_matches_fixpoint(seed):
    old, new, _ = random_pair(seed, edits=3, ops=("move", "swap", "wrap", "unwrap", "insert", "delete"))
    changes = extract_changes(parse_source(old), parse_source(new))
    line_hunks = line_diff(changes.old_unit.source_lines, changes.new_unit.source_lines)
    if not changes:
        return
    anchors = [set(anchor_hunks(c, line_hunks)) for c in changes]
    parents = [c.parent_id if c.ct in MOVE_TYPES else None for c in changes]
    assert _groups(hunks_for(changes), list(changes)) == fixpoint_groups(anchors, parents)


@given(seeds)
def test_grouping_ignores_enumeration_order(seed):
    old, new, _ = random_pair(seed, edits=3)
    changes = list(extract_changes(parse_source(old), parse_source(new)))
    line_hunks = line_diff(old.splitlines(), new.splitlines())
    shuffled = changes[:]
    random.Random(seed).shuffle(shuffled)

    def partition(cs):
        return {frozenset(id(c) for c in h.changes) for h in group_ast_hunks(cs, line_hunks)}

    assert partition(changes) == partition(shuffled)


@given(seeds)
def test_formatting_edits_give_no_ast_hunks(seed):
    prog = random_program(seed)
    old, new = render(prog), render(prog, random.Random(seed), comment_prob=0.3)
    assert hunks_for(extract_changes(parse_source(old), parse_source(new))) == []
