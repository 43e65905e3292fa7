import random

import pytest
from hypothesis import given, strategies as st

from astchange.synth import random_program, render
from astchange.syntax import EntityKind as K, ParseError, normalize_value, parse_source

ELSE_BRANCH_OLD = """\
public void run(boolean ready) {
    if (ready) {
        start();
    } else {
        foo.bar();
    }
}
"""


def body(unit):
    return unit.root.children[0].children


def test_if_fragment():
    (node,) = body(parse_source("if (x > 0) { return y; }"))
    assert node.structure() == (
        K.IF, "x > 0", (
            (K.CONDITION_EXPRESSION, "x > 0", ()),
            (K.THEN, "then", ((K.RETURN_STATEMENT, "return y;", ()),)),
        ),
    )


def test_comment_only_fragment_has_no_statements():
    unit = parse_source("// comment only")
    assert [n for n in unit.root.walk() if n.kind.is_statement] == []


def test_else_holds_invocation():
    unit = parse_source(ELSE_BRANCH_OLD)
    else_ = next(n for n in unit.root.walk() if n.kind is K.ELSE)
    assert [(c.kind, c.value) for c in else_.children] == [(K.METHOD_INVOCATION, "foo.bar();")]


@pytest.mark.parametrize("raw, expected", [("  a  =  b ;", "a = b ;"), ("", ""), ("x\t>\n0", "x > 0")])
def test_normalize_value(raw, expected):
    assert normalize_value(raw) == expected


def test_statement_classification():
    src = "int a = 1; a = 2; a++; foo(a); return a; break; continue; throw new E();"
    kinds = [n.kind for n in body(parse_source(src))]
    assert kinds == [
        K.VARIABLE_DECLARATION, K.ASSIGNMENT, K.ASSIGNMENT, K.METHOD_INVOCATION,
        K.RETURN_STATEMENT, K.BREAK_STATEMENT, K.CONTINUE_STATEMENT, K.THROW_STATEMENT,
    ]


def test_control_structures():
    src = """
    class A {
        int f(int a) {
            for (int i = 0; i < n; i++) { x += i; }
            do { a++; } while (a < 3);
            switch (a) { case 1: foo(); break; default: bar(); }
            try { g(); } catch (IOException e) { log(e); } finally { close(); }
            return a;
        }
    }
    """
    method = parse_source(src).root.children[0]
    assert method.value == "int f(int)"
    assert [c.kind for c in method.children] == [K.FOR, K.DO_WHILE, K.SWITCH, K.TRY, K.RETURN_STATEMENT]
    loop, do, switch, try_ = method.children[:4]
    assert loop.value == "int i = 0; i < n; i++"
    assert do.children[-1].kind is K.CONDITION_EXPRESSION
    assert [c.value for c in switch.children[1:]] == ["case 1:", "default:"]
    assert [c.kind for c in try_.children] == [K.METHOD_INVOCATION, K.CATCH_CLAUSE, K.FINALLY]


def test_comment_markers_inside_strings_are_kept():
    (node,) = body(parse_source('foo("// x /* y */"); // real'))
    assert node.value == 'foo("// x /* y */");'


@pytest.mark.parametrize("src, line", [
    ("class A {\n void f() {\n x = 1;\n }", 4),
    ("class A {\n void f() {\n x = 1\n }\n}", 3),
    ("enum E { A, B }", 1),
    ("class A {\n class B {}\n}", 2),
])
def test_parse_errors_carry_position(src, line):
    with pytest.raises(ParseError) as info:
        parse_source(src, "A.java")
    assert info.value.line == line
    assert info.value.column > 0
    assert "A.java" in str(info.value)


def _check_spans(node):
    lo, hi = node.span
    assert lo <= hi
    prev_end = None
    for c in node.children:
        assert lo <= c.span[0] and c.span[1] <= hi
        if prev_end is not None:
            # siblings may share a boundary line ("} else {")
            assert prev_end <= c.span[0]
        prev_end = c.span[1]
        _check_spans(c)


seeds = st.integers(min_value=0, max_value=10**6)


@given(seeds)
def test_parsing_is_deterministic(seed):
    text = render(random_program(seed))
    assert parse_source(text).root.structure() == parse_source(text).root.structure()


@given(seeds)
def test_layout_and_comments_do_not_change_the_tree(seed):
    prog = random_program(seed)
    plain = parse_source(render(prog))
    styled = parse_source(render(prog, random.Random(seed), comment_prob=0.3))
    assert plain.root.structure() == styled.root.structure()


@given(seeds)
def test_span_containment(seed):
    unit = parse_source(render(random_program(seed), random.Random(seed)))
    _check_spans(unit.root)
    assert unit.root.span[0] >= 1 and unit.root.span[1] <= len(unit.source_lines)


@given(st.text(alphabet=" \t\n", max_size=5), st.sampled_from(["", "/* c */", "// c\n"]))
def test_whitespace_between_tokens(space, comment):
    base = parse_source("if (a > b) { x = y + 1; }").root.structure()
    text = f"if{space}({space}a{space}>{comment} b){{{space}x{space}={space}y{comment} + 1;}}"
    assert parse_source(text).root.structure() == base
