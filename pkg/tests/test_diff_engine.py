from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from astchange.diff_engine import (
    DELETE_TYPES,
    INSERT_TYPES,
    MOVE_TYPES,
    ChangeType as C,
    Side,
    SourceCodeChange,
    extract_changes,
    match_trees,
    render_change,
)
from astchange.synth import random_pair, random_program, render
from astchange.syntax import EntityKind as K, parse_source
from oracles import (
    OracleMismatch,
    apply_changes,
    optimal_leaf_matching,
    statement_tree,
)

seeds = st.integers(min_value=0, max_value=10**6)


def diff(old: str, new: str):
    return extract_changes(parse_source(old), parse_source(new))


def triples(changes):
    return [(c.ct, c.et, c.pt) for c in changes]


@pytest.mark.parametrize("ct, et, pt, text", [
    (C.STATEMENT_DELETE, K.ASSIGNMENT, K.FOR, "Statement delete of Assignment in For"),
    (C.STATEMENT_INSERT, K.RETURN_STATEMENT, K.IF, "Statement insert of Return in If"),
    (C.CONDITION_EXPRESSION_CHANGE, K.CONDITION_EXPRESSION, K.IF, "Condition expression change of Condition in If"),
])
def test_render(ct, et, pt, text):
    assert render_change(SourceCodeChange(ct, et, pt)) == text


def test_else_removal_two_changes(fixtures):
    changes = diff((fixtures / "else_removal_old.java").read_text(), (fixtures / "else_removal_new.java").read_text())
    assert triples(changes) == [
        (C.ELSE_PART_DELETE, K.ELSE, K.IF),
        (C.STATEMENT_DELETE, K.METHOD_INVOCATION, K.ELSE),
    ]
    assert all(c.side is Side.OLD for c in changes)


def test_identical_files():
    text = render(random_program(7))
    assert len(diff(text, text)) == 0


def test_precondition_with_jump():
    changes = diff("void f(P p) { use(p); }", "void f(P p) { if (p == null) { return; } use(p); }")
    assert triples(changes) == [
        (C.STATEMENT_INSERT, K.IF, K.METHOD_DECLARATION),
        (C.STATEMENT_INSERT, K.RETURN_STATEMENT, K.IF),
    ]
    if_, ret = changes
    assert ret.parent_id == if_.node_id


def test_empty_body_maps_only_declarations():
    old, new = parse_source("class A { void f() { } }"), parse_source("class A { void f() { x = 1; } }")
    mapping = match_trees(old, new)
    assert {o.kind for o, _ in mapping.items()} == {K.CLASS, K.METHOD_DECLARATION}


def test_one_token_change_maps_assignments():
    old = ["total = total + price;", "count++;", "log.info(total);"]
    new = ["total = total + cost;", "count++;", "log.info(total);"]
    u_old = parse_source("class A { void f() { " + " ".join(old) + " } }")
    u_new = parse_source("class A { void f() { " + " ".join(new) + " } }")
    mapping = match_trees(u_old, u_new)
    m_old, m_new = u_old.root.children[0].children, u_new.root.children[0].children
    got = {(m_old.index(o), m_new.index(n)) for o, n in mapping.items() if o in m_old}
    want = optimal_leaf_matching([(n.kind, n.value) for n in m_old], [(n.kind, n.value) for n in m_new])
    assert got == want == {(0, 0), (1, 1), (2, 2)}
    (change,) = extract_changes(u_old, u_new)
    assert (change.ct, change.et, change.node_value) == (C.STATEMENT_UPDATE, K.ASSIGNMENT, "total = total + cost;")


@pytest.mark.parametrize("stmts", [
    (["a = b + c;", "x = y;", "foo(a);"], ["a = b + d;", "foo(a);", "x = y;"]),
    (["int n = size();", "n++;"], ["n++;", "int n = count();"]),
    (["list.add(item);", "list.remove(other);"], ["list.add(items);", "list.remove(others);"]),
])
def test_greedy_agrees_with_optimal_matching(stmts):
    old, new = stmts
    u_old = parse_source("class A { void f() { " + " ".join(old) + " } }")
    u_new = parse_source("class A { void f() { " + " ".join(new) + " } }")
    m_old, m_new = u_old.root.children[0].children, u_new.root.children[0].children
    got = {(m_old.index(o), m_new.index(n)) for o, n in match_trees(u_old, u_new).items() if o in m_old}
    assert got == optimal_leaf_matching([(n.kind, n.value) for n in m_old], [(n.kind, n.value) for n in m_new])


def test_loop_condition_change():
    changes = diff("void f() { while (i < n) { i++; } }", "void f() { while (i <= n) { i++; } }")
    assert triples(changes) == [(C.CONDITION_EXPRESSION_CHANGE, K.CONDITION_EXPRESSION, K.WHILE)]


def test_kind_change_is_delete_plus_insert():
    changes = diff("void f() { x = compute(a); }", "void f() { compute(a); }")
    assert sorted(c.ct.value for c in changes) == ["StatementDelete", "StatementInsert"]


def test_else_insert_keeps_inner_inserts():
    changes = diff("void f() { if (a) { x(); } }", "void f() { if (a) { x(); } else { y(); } }")
    assert triples(changes) == [
        (C.ELSE_PART_INSERT, K.ELSE, K.IF),
        (C.STATEMENT_INSERT, K.METHOD_INVOCATION, K.ELSE),
    ]


def test_move_into_new_parent_reports_new_parent():
    changes = diff("void f() { a(); b(); }", "void f() { if (ok) { b(); } a(); }")
    moves = [c for c in changes if c.ct is C.STATEMENT_PARENT_CHANGE]
    assert [(m.et, m.pt, m.node_value) for m in moves] == [(K.METHOD_INVOCATION, K.IF, "b();")]


def test_reorder_is_ordering_change():
    changes = diff("void f() { a(); b(); c(); }", "void f() { c(); a(); b(); }")
    assert triples(changes) == [(C.STATEMENT_ORDERING_CHANGE, K.METHOD_INVOCATION, K.METHOD_DECLARATION)]


def test_member_changes():
    old = "class A { int x = 1; void f(int a) { } void g() { } }"
    new = "class A { int y = 1; void f(long a) { } void h() { } }"
    got = Counter((c.ct, c.et) for c in diff(old, new))
    assert got == Counter({
        (C.REMOVED_OBJECT_STATE, K.FIELD_DECLARATION): 1,
        (C.ADDITIONAL_OBJECT_STATE, K.FIELD_DECLARATION): 1,
        (C.METHOD_DECLARATION_CHANGE, K.METHOD_DECLARATION): 1,
        (C.REMOVED_FUNCTIONALITY, K.METHOD_DECLARATION): 1,
        (C.ADDITIONAL_FUNCTIONALITY, K.METHOD_DECLARATION): 1,
    })


# --------------------------------------------------------------------------
# properties over generated programs

@given(seeds)
def test_identity(seed):
    unit = parse_source(render(random_program(seed)))
    assert len(extract_changes(unit, unit)) == 0


@given(seeds)
def test_formatting_only_variant_has_no_changes(seed):
    import random

    prog = random_program(seed)
    changes = diff(render(prog), render(prog, random.Random(seed), comment_prob=0.3))
    assert len(changes) == 0


def check_edit_script(change_list):
    try:
        rebuilt = apply_changes(change_list)
    except OracleMismatch as exc:
        pytest.fail(f"edit script not applicable: {exc}")
    assert rebuilt.shape() == statement_tree(change_list.new_unit).shape()


@pytest.mark.parametrize("name", ["else_removal", "wrapped_return", "precondition_jump"])
def test_edit_script_on_fixtures(fixtures, name):
    check_edit_script(diff((fixtures / f"{name}_old.java").read_text(), (fixtures / f"{name}_new.java").read_text()))


@settings(max_examples=150)
@given(seeds, st.integers(1, 4), st.booleans())
def test_edit_script_oracle(seed, edits, layout):
    old, new, _ = random_pair(seed, edits=edits, layout=layout)
    check_edit_script(diff(old, new))


@given(seeds)
def test_changes_are_sorted_by_position(seed):
    old, new, _ = random_pair(seed)
    keys = [(c.anchor_span[0], c.side is Side.NEW) for c in diff(old, new)]
    assert keys == sorted(keys)


@given(seeds)
def test_sides_and_update_kinds(seed):
    old, new, _ = random_pair(seed)
    for c in diff(old, new):
        if c.ct in DELETE_TYPES:
            assert c.side is Side.OLD
        else:
            assert c.side is Side.NEW
        if c.ct is C.STATEMENT_UPDATE:
            assert c.old_node.kind is c.new_node.kind


def _parents(unit):
    """AST node -> kind of its parent in the statement tree."""
    out = {}

    def visit(ast, parent_kind):
        out[ast] = parent_kind
        for c in ast.children:
            if c.kind is K.THEN:
                for g in c.children:
                    visit(g, ast.kind)
            else:
                visit(c, ast.kind)

    for cls in unit.classes():
        visit(cls, K.CLASS)
    return out


@given(seeds)
def test_pt_is_actual_parent(seed):
    old, new, _ = random_pair(seed)
    changes = diff(old, new)
    old_parents, new_parents = _parents(changes.old_unit), _parents(changes.new_unit)
    for c in changes:
        if c.ct is C.CONDITION_EXPRESSION_CHANGE:
            assert new_parents[c.new_node] is c.pt
        elif c.ct in DELETE_TYPES:
            assert old_parents[c.old_node] is c.pt
        else:
            assert new_parents[c.new_node] is c.pt


INSERT_DELETE_EDITS = (
    "insert", "delete", "add_else", "remove_else", "add_method", "remove_method",
    "add_field", "remove_field", "add_arm", "remove_arm", "precondition",
)
REVERSE = {
    C.STATEMENT_INSERT: C.STATEMENT_DELETE,
    C.ELSE_PART_INSERT: C.ELSE_PART_DELETE,
    C.ADDITIONAL_FUNCTIONALITY: C.REMOVED_FUNCTIONALITY,
    C.ADDITIONAL_OBJECT_STATE: C.REMOVED_OBJECT_STATE,
}
REVERSE.update({v: k for k, v in REVERSE.items()})


@given(seeds)
def test_insert_delete_symmetry(seed):
    old, new, _ = random_pair(seed, ops=INSERT_DELETE_EDITS)
    forward, backward = diff(old, new), diff(new, old)
    if any(c.ct in MOVE_TYPES for c in (*forward, *backward)):
        return  # symmetry is only claimed without moves

    def summary(changes, flip):
        return Counter(
            (REVERSE[c.ct] if flip else c.ct, c.et, c.pt, c.node_value)
            for c in changes if c.ct in INSERT_TYPES | DELETE_TYPES
        )

    assert summary(forward, True) == summary(backward, False)
