"""Statement-level parser for a Java-like language subset.

Expressions are not parsed into subtrees. Each statement keeps its token
text, re-joined with a fixed spacing rule, so that two sources differing
only in whitespace or comments produce the same values.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator


class EntityKind(enum.Enum):
    CLASS = "Class"
    METHOD_DECLARATION = "MethodDeclaration"
    FIELD_DECLARATION = "FieldDeclaration"
    PARAMETER = "Parameter"
    RETURN_TYPE = "ReturnType"
    BLOCK = "Block"
    IF = "If"
    THEN = "Then"
    ELSE = "Else"
    FOR = "For"
    WHILE = "While"
    DO_WHILE = "DoWhile"
    SWITCH = "Switch"
    SWITCH_CASE = "SwitchCase"
    TRY = "Try"
    CATCH_CLAUSE = "CatchClause"
    FINALLY = "Finally"
    CONDITION_EXPRESSION = "ConditionExpression"
    ASSIGNMENT = "Assignment"
    VARIABLE_DECLARATION = "VariableDeclaration"
    METHOD_INVOCATION = "MethodInvocation"
    RETURN_STATEMENT = "ReturnStatement"
    BREAK_STATEMENT = "BreakStatement"
    CONTINUE_STATEMENT = "ContinueStatement"
    THROW_STATEMENT = "ThrowStatement"

    @property
    def is_statement(self) -> bool:
        return self in STATEMENT_KINDS


STATEMENT_KINDS = frozenset({
    EntityKind.ASSIGNMENT,
    EntityKind.VARIABLE_DECLARATION,
    EntityKind.METHOD_INVOCATION,
    EntityKind.RETURN_STATEMENT,
    EntityKind.BREAK_STATEMENT,
    EntityKind.CONTINUE_STATEMENT,
    EntityKind.THROW_STATEMENT,
})

# kinds whose value is the text of a ConditionExpression child
CONDITIONAL_KINDS = frozenset({
    EntityKind.IF,
    EntityKind.FOR,
    EntityKind.WHILE,
    EntityKind.DO_WHILE,
    EntityKind.SWITCH,
})


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, column: int = 0, path: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{column}: {message}")


@dataclass(eq=False)
class AstNode:
    """A node of the statement tree.

    Nodes compare by identity; use :meth:`structure` for structural
    equality that ignores spans.
    """

    kind: EntityKind
    value: str
    children: list[AstNode] = field(default_factory=list)
    span: tuple[int, int] = (0, 0)

    def structure(self) -> tuple:
        return (self.kind, self.value, tuple(c.structure() for c in self.children))

    def walk(self) -> Iterator[AstNode]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def child(self, kind: EntityKind) -> AstNode | None:
        for c in self.children:
            if c.kind is kind:
                return c
        return None

    def __repr__(self) -> str:
        return f"AstNode({self.kind.value}, {self.value!r}, {len(self.children)} children, span={self.span})"


@dataclass(eq=False)
class CompilationUnit:
    path: str
    root: AstNode
    source_lines: list[str]
    # set when root is a wrapper created by the parser rather than a declared class
    synthetic: bool = False

    def classes(self) -> list[AstNode]:
        """Top-level class nodes. Statement fragments yield their wrapper."""
        if self.synthetic and self.root.children and all(
            c.kind is EntityKind.CLASS for c in self.root.children
        ):
            return list(self.root.children)
        return [self.root]


def normalize_value(raw: str) -> str:
    return " ".join(raw.split())


# --------------------------------------------------------------------------
# tokenizer

@dataclass(frozen=True)
class Token:
    kind: str  # word, number, string, op, eof
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\f\r]+)
  | (?P<nl>\n)
  | (?P<lc>//[^\n]*)
  | (?P<bc>/\*)
  | (?P<string>"(?:\\.|[^"\\\n])*"|'(?:\\.|[^'\\\n])+')
  | (?P<number>(?:0[xX][0-9a-fA-F_]+|\d[\d_]*(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)[lLfFdD]?)
  | (?P<word>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<op>>>>=|<<=|>>=|>>>|\.\.\.|->|::|\+\+|--|&&|\|\||<<|>>|[-+*/%&|^!=<>]=|[{}()\[\];,.?:~!<>=+\-*/%&|^@])
    """,
    re.VERBOSE,
)

KEYWORDS = frozenset("""
    abstract assert boolean break byte case catch char class const continue default do
    double else enum extends final finally float for goto if implements import instanceof
    int interface long native new package private protected public return short static
    strictfp super switch synchronized this throw throws transient try void volatile while
    """.split())

_MODIFIERS = frozenset(
    "public private protected static final abstract native synchronized transient volatile strictfp default".split()
)
_ASSIGN_OPS = frozenset("= += -= *= /= %= &= |= ^= <<= >>= >>>=".split())
_PRIMITIVES = frozenset("boolean byte char short int long float double void".split())


def tokenize(text: str, path: str = "") -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, path)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "bc":
            end = text.find("*/", m.end())
            if end < 0:
                raise ParseError("unterminated block comment", line, pos - line_start + 1, path)
            body = text[pos:end + 2]
            newlines = body.count("\n")
            if newlines:
                line += newlines
                line_start = pos + body.rfind("\n") + 1
            pos = end + 2
            continue
        elif kind not in ("ws", "lc"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _is_operand_end(tok: Token) -> bool:
    if tok.kind in ("number", "string"):
        return True
    if tok.kind == "word":
        return tok.text not in KEYWORDS or tok.text in ("this", "super")
    return tok.text in (")", "]")


def join_tokens(tokens: list[Token]) -> str:
    """Render tokens with a spacing rule that depends only on the tokens."""
    out: list[str] = []
    prev: Token | None = None
    prev_unary = False
    for tok in tokens:
        t = tok.text
        unary = False
        if t in ("-", "+", "++", "--", "!", "~"):
            unary = prev is None or not _is_operand_end(prev)
            if t in ("!", "~"):
                unary = True
        if prev is not None and _space_between(prev, tok, prev_unary, unary):
            out.append(" ")
        out.append(t)
        prev, prev_unary = tok, unary
    return "".join(out)


def _space_between(a: Token, b: Token, a_unary: bool, b_unary: bool) -> bool:
    at, bt = a.text, b.text
    if bt in (".", ",", ";", ")", "]", "...", "::"):
        return False
    if at in (".", "(", "[", "@", "::"):
        return False
    if a_unary:
        return False
    if bt in ("++", "--") and not b_unary:
        return False
    if bt == "(":
        if a.kind == "word" and (at not in KEYWORDS or at in ("this", "super")):
            return False
        return at not in (")", "]")
    if bt == "[":
        return not (a.kind == "word" or at in (")", "]"))
    return True


# --------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str, path: str):
        self.path = path
        self.toks = tokenize(text, path)
        self.i = 0

    # token helpers

    def peek(self, k: int = 0) -> Token:
        j = min(self.i + k, len(self.toks) - 1)
        return self.toks[j]

    def next(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, text: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok.text == text and tok.kind in ("op", "word")

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.col, self.path)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if not self.at(text):
            found = tok.text or "end of input"
            if text == "}" and tok.kind == "eof":
                raise self.error("unbalanced braces: missing '}'", tok)
            raise self.error(f"expected {text!r}, found {found!r}", tok)
        return self.next()

    def balanced(self, open_: str, close: str) -> tuple[Token, list[Token], Token]:
        """Consume a bracketed group, returning (open, inner tokens, close)."""
        first = self.expect(open_)
        depth = 1
        inner: list[Token] = []
        while True:
            tok = self.next()
            if tok.kind == "eof":
                raise self.error(f"unbalanced {open_!r}", first)
            if tok.kind == "op":
                if tok.text in ("(", "[", "{"):
                    depth += 1
                elif tok.text in (")", "]", "}"):
                    depth -= 1
                    if depth == 0:
                        if tok.text != close:
                            raise self.error(f"mismatched {tok.text!r}", tok)
                        return first, inner, tok
            inner.append(tok)

    def skip_annotation(self) -> None:
        self.expect("@")
        self.next()
        while self.at(".") and self.peek(1).kind == "word":
            self.i += 2
        if self.at("("):
            self.balanced("(", ")")

    def skip_modifiers(self) -> list[Token]:
        mods: list[Token] = []
        while True:
            if self.at("@") and not self.at("interface", 1):
                start = self.i
                self.skip_annotation()
                mods.extend(self.toks[start:self.i])
            elif self.peek().kind == "word" and self.peek().text in _MODIFIERS and not (
                self.peek().text in ("synchronized",) and self.at("(", 1)
            ):
                mods.append(self.next())
            else:
                return mods

    def type_end(self, j: int, toks: list[Token] | None = None) -> int | None:
        """Index just past a type starting at token j, or None."""
        toks = self.toks if toks is None else toks
        if toks[j].kind != "word" or (toks[j].text in KEYWORDS and toks[j].text not in _PRIMITIVES):
            return None
        j += 1
        while True:
            if toks[j].text == "<":
                depth = 0
                while True:
                    t = toks[j].text
                    if t == "<":
                        depth += 1
                    elif t == ">":
                        depth -= 1
                    elif t == ">>":
                        depth -= 2
                    elif t == ">>>":
                        depth -= 3
                    elif toks[j].kind not in ("word",) and t not in (",", ".", "?", "[", "]", "&"):
                        return None
                    j += 1
                    if depth <= 0:
                        break
                if depth < 0:
                    return None
            if toks[j].text == "." and toks[j + 1].kind == "word":
                j += 2
                continue
            break
        while toks[j].text == "[" and toks[j + 1].text == "]":
            j += 2
        if toks[j].text == "...":
            j += 1
        return j

    # compilation unit

    def parse_unit(self, text: str) -> CompilationUnit:
        lines = text.splitlines()
        nlines = max(1, len(lines))
        while self.at("package") or self.at("import"):
            self.until_semicolon()
        if self.is_type_declaration():
            classes = []
            while self.peek().kind != "eof":
                if self.at(";"):
                    self.next()
                    continue
                classes.append(self.parse_class())
            if len(classes) == 1:
                return CompilationUnit(self.path, classes[0], lines)
            root = AstNode(EntityKind.CLASS, "", classes, (1, nlines))
            return CompilationUnit(self.path, root, lines, synthetic=True)
        if self.looks_like_member():
            members = self.parse_members(until_eof=True)
            root = AstNode(EntityKind.CLASS, "", members, (1, nlines))
            return CompilationUnit(self.path, root, lines, synthetic=True)
        stmts = self.parse_statements(until_eof=True)
        method = AstNode(EntityKind.METHOD_DECLARATION, "<fragment>", stmts, (1, nlines))
        root = AstNode(EntityKind.CLASS, "", [method], (1, nlines))
        return CompilationUnit(self.path, root, lines, synthetic=True)

    def until_semicolon(self) -> list[Token]:
        start = self.i
        depth = 0
        while True:
            tok = self.next()
            if tok.kind == "eof":
                raise self.error("unterminated statement: missing ';'", self.toks[start])
            if tok.kind == "op":
                if tok.text in ("(", "[", "{"):
                    depth += 1
                elif tok.text in (")", "]", "}"):
                    depth -= 1
                    if depth < 0:
                        raise self.error("unterminated statement: missing ';'", self.toks[start])
                elif tok.text == ";" and depth == 0:
                    return self.toks[start:self.i]

    def is_type_declaration(self) -> bool:
        save = self.i
        try:
            self.skip_modifiers()
            return self.at("class") or self.at("interface") or self.at("enum") or (
                self.at("@") and self.at("interface", 1)
            )
        finally:
            self.i = save

    def looks_like_member(self) -> bool:
        save = self.i
        try:
            mods = self.skip_modifiers()
            if any(m.text in ("public", "private", "protected", "static", "abstract") for m in mods):
                return True
            if self.at("<"):
                return True
            end = self.type_end(self.i)
            if end is None:
                return False
            if self.toks[end].text == "(" and self.toks[self.i].text not in _PRIMITIVES:
                # ``Name(...) {`` is a constructor; ``name(...);`` is a call
                _, _, close = self._peek_balanced(end)
                return close is not None and self.toks[close + 1].text in ("{", "throws")
            return self.toks[end].kind == "word" and self.toks[end + 1].text == "("
        finally:
            self.i = save

    def _peek_balanced(self, j: int) -> tuple[int, int, int | None]:
        depth = 0
        start = j
        while self.toks[j].kind != "eof":
            t = self.toks[j].text
            if t in ("(", "[", "{"):
                depth += 1
            elif t in (")", "]", "}"):
                depth -= 1
                if depth == 0:
                    return start, j, j
            j += 1
        return start, j, None

    def parse_class(self) -> AstNode:
        first = self.peek()
        self.skip_modifiers()
        if self.at("enum") or (self.at("@") and self.at("interface", 1)):
            raise self.error("enum and annotation declarations are not supported")
        if not (self.at("class") or self.at("interface")):
            raise self.error("unsupported top-level construct")
        self.next()
        name = self.next()
        if name.kind != "word":
            raise self.error("expected class name", name)
        while not self.at("{"):
            if self.peek().kind == "eof":
                raise self.error("expected '{' after class header")
            self.next()
        self.expect("{")
        members = self.parse_members()
        close = self.expect("}")
        return AstNode(EntityKind.CLASS, name.text, members, (first.line, close.line))

    def parse_members(self, until_eof: bool = False) -> list[AstNode]:
        members: list[AstNode] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                if until_eof:
                    return members
                raise self.error("unbalanced braces: missing '}'")
            if self.at("}"):
                if until_eof:
                    raise self.error("unbalanced braces: unexpected '}'")
                return members
            if self.at(";"):
                self.next()
                continue
            members.append(self.parse_member())

    def parse_member(self) -> AstNode:
        first_i = self.i
        first = self.peek()
        mods = self.skip_modifiers()
        if self.at("class") or self.at("interface") or self.at("enum"):
            raise self.error("nested type declarations are not supported")
        if self.at("{"):
            _, body, close = self.parse_block()
            value = "static {}" if any(m.text == "static" for m in mods) else "{}"
            return AstNode(EntityKind.METHOD_DECLARATION, value, body, (first.line, close.line))
        if self.at("<"):
            self.balanced_angle()
        start = self.i
        end = self.type_end(self.i)
        if end is None:
            raise self.error("unsupported class member")
        if self.toks[end].text == "(":
            # constructor
            name = self.toks[start].text
            return_type = ""
            self.i = end
        else:
            return_type = join_tokens(self.toks[start:end])
            self.i = end
            name_tok = self.next()
            if name_tok.kind != "word":
                raise self.error("expected member name", name_tok)
            name = name_tok.text
            if not self.at("("):
                # field declaration: consume to ';'
                self.i = start
                rest = self.until_semicolon()
                toks = self.toks[first_i:start] + rest
                return AstNode(EntityKind.FIELD_DECLARATION, join_tokens(toks), [], (first.line, rest[-1].line))
        _, params, _ = self.balanced("(", ")")
        while self.at("[") and self.at("]", 1):
            self.i += 2
            return_type += "[]"
        if self.at("throws"):
            while not (self.at("{") or self.at(";")):
                if self.peek().kind == "eof":
                    raise self.error("expected method body")
                self.next()
        ptypes = ", ".join(_param_types(params))
        signature = f"{return_type} {name}({ptypes})" if return_type else f"{name}({ptypes})"
        if self.at(";"):
            end_tok = self.next()
            return AstNode(EntityKind.METHOD_DECLARATION, signature, [], (first.line, end_tok.line))
        if self.at("default"):
            end_tok = self.until_semicolon()[-1]
            return AstNode(EntityKind.METHOD_DECLARATION, signature, [], (first.line, end_tok.line))
        _, body, close = self.parse_block()
        return AstNode(EntityKind.METHOD_DECLARATION, signature, body, (first.line, close.line))

    def balanced_angle(self) -> None:
        depth = 0
        while True:
            tok = self.next()
            if tok.kind == "eof":
                raise self.error("unbalanced '<'")
            if tok.text == "<":
                depth += 1
            elif tok.text in (">", ">>", ">>>"):
                depth -= len(tok.text)
                if depth <= 0:
                    return

    # statements

    def parse_block(self) -> tuple[Token, list[AstNode], Token]:
        open_ = self.expect("{")
        stmts = self.parse_statements()
        close = self.expect("}")
        return open_, stmts, close

    def parse_statements(self, until_eof: bool = False) -> list[AstNode]:
        stmts: list[AstNode] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                if until_eof:
                    return stmts
                raise self.error("unbalanced braces: missing '}'")
            if self.at("}"):
                if until_eof:
                    raise self.error("unbalanced braces: unexpected '}'")
                return stmts
            stmt = self.parse_statement()
            if stmt is not None:
                stmts.append(stmt)

    def parse_body(self) -> tuple[list[AstNode], int, int]:
        """Body of a control structure: a braced block or one statement."""
        if self.at("{"):
            open_, stmts, close = self.parse_block()
            return stmts, open_.line, close.line
        first = self.peek()
        stmt = self.parse_statement()
        if stmt is None:
            return [], first.line, self.toks[self.i - 1].line
        return [stmt], stmt.span[0], stmt.span[1]

    def parse_condition(self) -> AstNode:
        open_, inner, close = self.balanced("(", ")")
        return AstNode(EntityKind.CONDITION_EXPRESSION, join_tokens(inner), [], (open_.line, close.line))

    def parse_statement(self) -> AstNode | None:
        tok = self.peek()
        t = tok.text if tok.kind in ("word", "op") else None
        if t == ";":
            self.next()
            return None
        if t == "{":
            open_, stmts, close = self.parse_block()
            return AstNode(EntityKind.BLOCK, "", stmts, (open_.line, close.line))
        if t == "if":
            return self.parse_if()
        if t in ("for", "while"):
            self.next()
            cond = self.parse_condition()
            body, _, end = self.parse_body()
            kind = EntityKind.FOR if t == "for" else EntityKind.WHILE
            return AstNode(kind, cond.value, [cond, *body], (tok.line, end))
        if t == "do":
            self.next()
            body, _, _ = self.parse_body()
            self.expect("while")
            cond = self.parse_condition()
            end = self.expect(";")
            return AstNode(EntityKind.DO_WHILE, cond.value, [*body, cond], (tok.line, end.line))
        if t == "switch":
            return self.parse_switch()
        if t == "try":
            return self.parse_try()
        if t == "synchronized" and self.at("(", 1):
            self.next()
            _, inner, _ = self.balanced("(", ")")
            _, stmts, close = self.parse_block()
            return AstNode(EntityKind.BLOCK, f"synchronized ({join_tokens(inner)})", stmts, (tok.line, close.line))
        if t in ("else", "catch", "finally", "case", "default"):
            raise self.error(f"unexpected {t!r}")
        if t in ("class", "interface", "enum"):
            raise self.error("local type declarations are not supported")
        if t == "}":
            raise self.error("unbalanced braces: unexpected '}'")
        if tok.kind == "word" and t not in KEYWORDS and self.at(":", 1):
            # labeled statement; the label is not part of the tree
            self.i += 2
            return self.parse_statement()
        toks = self.until_semicolon()
        kind = self.classify(toks)
        return AstNode(kind, join_tokens(toks), [], (toks[0].line, toks[-1].line))

    def parse_if(self) -> AstNode:
        if_tok = self.expect("if")
        cond = self.parse_condition()
        body, start, end = self.parse_body()
        then = AstNode(EntityKind.THEN, "then", body, (start, end))
        children = [cond, then]
        if self.at("else"):
            else_tok = self.next()
            if self.at("if"):
                nested = self.parse_if()
                else_body, end = [nested], nested.span[1]
            else:
                else_body, _, end = self.parse_body()
            children.append(AstNode(EntityKind.ELSE, "else", else_body, (else_tok.line, end)))
        return AstNode(EntityKind.IF, cond.value, children, (if_tok.line, end))

    def parse_switch(self) -> AstNode:
        tok = self.expect("switch")
        cond = self.parse_condition()
        self.expect("{")
        cases: list[AstNode] = []
        while not self.at("}"):
            head = self.peek()
            if head.kind == "eof":
                raise self.error("unbalanced braces: missing '}'")
            if self.at("case"):
                self.next()
                label: list[Token] = []
                while not self.at(":"):
                    if self.peek().kind == "eof" or self.at("->"):
                        raise self.error("malformed case label", head)
                    label.append(self.next())
                colon = self.next()
                value = f"case {join_tokens(label)}:"
            elif self.at("default"):
                self.next()
                colon = self.expect(":")
                value = "default:"
            else:
                raise self.error("statement outside of a case label")
            stmts: list[AstNode] = []
            while not (self.at("case") or self.at("default") or self.at("}")):
                if self.peek().kind == "eof":
                    raise self.error("unbalanced braces: missing '}'")
                stmt = self.parse_statement()
                if stmt is not None:
                    stmts.append(stmt)
            end = stmts[-1].span[1] if stmts else colon.line
            cases.append(AstNode(EntityKind.SWITCH_CASE, value, stmts, (head.line, end)))
        close = self.expect("}")
        return AstNode(EntityKind.SWITCH, cond.value, [cond, *cases], (tok.line, close.line))

    def parse_try(self) -> AstNode:
        tok = self.expect("try")
        value = "try"
        if self.at("("):
            _, inner, _ = self.balanced("(", ")")
            value = f"try ({join_tokens(inner)})"
        _, body, close = self.parse_block()
        children = list(body)
        end = close.line
        while self.at("catch"):
            catch_tok = self.next()
            _, param, _ = self.balanced("(", ")")
            _, stmts, close = self.parse_block()
            children.append(AstNode(EntityKind.CATCH_CLAUSE, join_tokens(param), stmts, (catch_tok.line, close.line)))
            end = close.line
        if self.at("finally"):
            fin_tok = self.next()
            _, stmts, close = self.parse_block()
            children.append(AstNode(EntityKind.FINALLY, "finally", stmts, (fin_tok.line, close.line)))
            end = close.line
        if value == "try" and len(children) == len(body):
            raise self.error("try without catch or finally", tok)
        return AstNode(EntityKind.TRY, value, children, (tok.line, end))

    def classify(self, toks: list[Token]) -> EntityKind:
        head = toks[0].text
        if head == "return":
            return EntityKind.RETURN_STATEMENT
        if head == "break":
            return EntityKind.BREAK_STATEMENT
        if head == "continue":
            return EntityKind.CONTINUE_STATEMENT
        if head == "throw":
            return EntityKind.THROW_STATEMENT
        j = 0
        while toks[j].text == "final" or toks[j].text == "@":
            if toks[j].text == "@":
                j += 2
            else:
                j += 1
        end = self.type_end(j, toks + [Token("eof", "", 0, 0)] * 3)
        if end is not None and end < len(toks) - 1 and toks[end].kind == "word" and toks[end].text not in KEYWORDS:
            if toks[end + 1].text in ("=", ";", ",", "["):
                return EntityKind.VARIABLE_DECLARATION
        depth = 0
        for k, tok in enumerate(toks):
            if tok.text in ("(", "[", "{"):
                depth += 1
            elif tok.text in (")", "]", "}"):
                depth -= 1
            elif depth == 0 and tok.text in _ASSIGN_OPS:
                return EntityKind.ASSIGNMENT
        if toks[0].text in ("++", "--") or (len(toks) >= 2 and toks[-2].text in ("++", "--")):
            return EntityKind.ASSIGNMENT
        return EntityKind.METHOD_INVOCATION


def _param_types(params: list[Token]) -> list[str]:
    if not params:
        return []
    groups: list[list[Token]] = [[]]
    depth = 0
    for tok in params:
        if tok.text in ("<", "(", "["):
            depth += 1
        elif tok.text in (">", ")", "]"):
            depth -= 1
        elif tok.text == ">>":
            depth -= 2
        if tok.text == "," and depth == 0:
            groups.append([])
        else:
            groups[-1].append(tok)
    types = []
    for group in groups:
        toks = [t for t in group if t.text != "final"]
        while toks and toks[0].text == "@":
            toks = toks[2:]
        dims = ""
        while len(toks) >= 3 and toks[-1].text == "]" and toks[-2].text == "[":
            dims += "[]"
            toks = toks[:-2]
        types.append(join_tokens(toks[:-1]) + dims)
    return types


def parse_source(text: str, path: str = "<string>") -> CompilationUnit:
    """Parse *text* into a CompilationUnit.

    A source holding a class declaration yields that class as root. Anything
    else is read as a fragment: either class members, wrapped in a synthetic
    class, or method-body statements, wrapped in a synthetic class holding one
    ``<fragment>`` method.
    """
    parser = _Parser(text, path)
    return parser.parse_unit(text)


def dump(node: AstNode, indent: int = 0) -> str:
    lines = [f"{'  ' * indent}{node.kind.value}({node.value!r}) {node.span[0]}-{node.span[1]}"]
    for c in node.children:
        lines.append(dump(c, indent + 1))
    return "\n".join(lines)
