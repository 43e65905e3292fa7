"""Random programs in the parsed subset, random edits, and a printer with
randomized layout.

Used by the property tests and by the throughput benchmark. A program is
held as a small model (classes, members, statements as token lists) so
that edits are made on structure and printing decides the layout.
"""

from __future__ import annotations

import copy
import random
from dataclasses import dataclass, field
from pathlib import Path

IDENTS = ("a", "b", "count", "total", "items", "result", "node", "value", "idx", "limit", "buf", "name")
OBJECTS = ("list", "map", "log", "out", "cache", "this", "helper", "queue")
METHODS = ("add", "put", "get", "remove", "clear", "flush", "update", "reset", "check", "write")
TYPES = ("int", "long", "String", "boolean", "Object", "double")
EXCEPTIONS = ("IOException", "IllegalStateException", "RuntimeException", "Exception")
OPS = ("<", ">", "<=", ">=", "==", "!=")

LEAF_KINDS = ("assign", "decl", "call", "return", "break", "continue", "throw")
BLOCK_KINDS = ("if", "for", "while", "do", "switch", "try", "block")


@dataclass
class Stmt:
    kind: str
    head: list[str] = field(default_factory=list)  # leaf tokens without ';', or the condition
    body: list["Stmt"] = field(default_factory=list)
    orelse: list["Stmt"] | None = None
    arms: list[tuple[list[str], list["Stmt"]]] = field(default_factory=list)  # cases or catches
    final: list["Stmt"] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.kind in LEAF_KINDS


@dataclass
class Method:
    ret: str  # "" for constructors
    name: str
    params: list[tuple[str, str]]
    body: list[Stmt]


@dataclass
class Field:
    tokens: list[str]


@dataclass
class ClassModel:
    name: str
    members: list[Field | Method]

    def methods(self) -> list[Method]:
        return [m for m in self.members if isinstance(m, Method)]

    def fields(self) -> list[Field]:
        return [m for m in self.members if isinstance(m, Field)]


@dataclass(frozen=True)
class GenConfig:
    fields: tuple[int, int] = (1, 4)
    methods: tuple[int, int] = (1, 4)
    statements: tuple[int, int] = (1, 5)
    max_depth: int = 2
    block_prob: float = 0.3


# --------------------------------------------------------------------------
# generation

class Generator:
    def __init__(self, rng: random.Random, config: GenConfig = GenConfig()):
        self.rng = rng
        self.config = config
        self._fresh = 0

    def fresh(self, stem: str) -> str:
        self._fresh += 1
        return f"{stem}{self._fresh}"

    def ident(self) -> str:
        return self.rng.choice(IDENTS)

    def operand(self) -> list[str]:
        r = self.rng.random()
        if r < 0.5:
            return [self.ident()]
        if r < 0.8:
            return [str(self.rng.randint(0, 99))]
        return self.call_expr()

    def call_expr(self) -> list[str]:
        args: list[str] = []
        for i in range(self.rng.randint(0, 2)):
            if i:
                args.append(",")
            args.append(self.ident())
        return [self.rng.choice(OBJECTS), ".", self.rng.choice(METHODS), "(", *args, ")"]

    def expr(self) -> list[str]:
        if self.rng.random() < 0.4:
            return [*self.operand(), self.rng.choice(("+", "-", "*")), *self.operand()]
        return self.operand()

    def condition(self) -> list[str]:
        r = self.rng.random()
        if r < 0.15:
            return [self.ident(), "!=", "null"]
        base = [self.ident(), self.rng.choice(OPS), *self.operand()]
        if r > 0.85:
            return [*base, self.rng.choice(("&&", "||")), self.ident(), self.rng.choice(OPS), str(self.rng.randint(0, 9))]
        return base

    def leaf(self, kind: str | None = None) -> Stmt:
        kind = kind or self.rng.choice(("assign", "assign", "decl", "call", "call", "return", "throw"))
        rng = self.rng
        if kind == "assign":
            r = rng.random()
            if r < 0.2:
                head = [self.ident(), rng.choice(("++", "--"))]
            else:
                head = [self.ident(), rng.choice(("=", "=", "+=", "-=")), *self.expr()]
        elif kind == "decl":
            head = [rng.choice(TYPES), self.fresh("v"), "=", *self.expr()]
        elif kind == "call":
            head = self.call_expr()
        elif kind == "return":
            head = ["return"] if rng.random() < 0.3 else ["return", *self.expr()]
        elif kind == "throw":
            head = ["throw", "new", rng.choice(EXCEPTIONS), "(", f'"{self.fresh("e")}"', ")"]
        else:
            head = [kind]
        return Stmt(kind, head)

    def statements(self, depth: int, lo: int | None = None, hi: int | None = None) -> list[Stmt]:
        lo = self.config.statements[0] if lo is None else lo
        hi = self.config.statements[1] if hi is None else hi
        return [self.statement(depth) for _ in range(self.rng.randint(lo, hi))]

    def statement(self, depth: int) -> Stmt:
        if depth >= self.config.max_depth or self.rng.random() >= self.config.block_prob:
            return self.leaf()
        return self.block(self.rng.choice(BLOCK_KINDS), depth)

    def block(self, kind: str, depth: int) -> Stmt:
        rng = self.rng
        sub = lambda: self.statements(depth + 1, 1, 3)  # noqa: E731
        if kind == "if":
            orelse = sub() if rng.random() < 0.4 else None
            return Stmt("if", self.condition(), sub(), orelse)
        if kind == "for":
            i = self.fresh("i")
            return Stmt("for", ["int", i, "=", "0", ";", i, "<", self.ident(), ";", i, "++"], sub())
        if kind == "while":
            return Stmt("while", self.condition(), sub())
        if kind == "do":
            return Stmt("do", self.condition(), sub())
        if kind == "switch":
            labels = rng.sample(range(10), rng.randint(1, 3))
            arms = [(["case", str(v), ":"], [*self.statements(depth + 1, 1, 2), Stmt("break", ["break"])]) for v in labels]
            if rng.random() < 0.5:
                arms.append((["default", ":"], self.statements(depth + 1, 1, 2)))
            return Stmt("switch", [self.ident()], arms=arms)
        if kind == "try":
            arms = [([ex, "e"], sub()) for ex in rng.sample(EXCEPTIONS, rng.randint(1, 2))]
            final = sub() if rng.random() < 0.3 else None
            return Stmt("try", [], sub(), arms=arms, final=final)
        return Stmt("block", [], sub())

    def method(self) -> Method:
        params = [(self.rng.choice(TYPES), self.fresh("p")) for _ in range(self.rng.randint(0, 2))]
        return Method(self.rng.choice(("void", *TYPES)), self.fresh("m"), params, self.statements(0))

    def field(self) -> Field:
        return Field(["private", self.rng.choice(TYPES), self.fresh("f"), "=", str(self.rng.randint(0, 99))])

    def program(self) -> ClassModel:
        members: list[Field | Method] = [self.field() for _ in range(self.rng.randint(*self.config.fields))]
        members += [self.method() for _ in range(self.rng.randint(*self.config.methods))]
        return ClassModel(self.fresh("C"), members)


# --------------------------------------------------------------------------
# printing

_GLUE = set("()[]{};,.")
_INDENT = "    "


class Printer:
    """Renders a model as source text.

    With no rng the layout is canonical: one statement per line, braces
    everywhere, single spaces between tokens. With an rng, token spacing,
    line breaks, optional braces and comments vary, which must not change
    the parsed tree.
    """

    def __init__(self, rng: random.Random | None = None, comment_prob: float = 0.1):
        self.rng = rng
        self.comment_prob = comment_prob
        self.lines: list[str] = []

    def sep(self, a: str, b: str) -> str:
        if self.rng is None:
            return " "
        r = self.rng.random()
        if (a in _GLUE or b in _GLUE) and r < 0.5:
            return ""
        if r < 0.75:
            return " "
        if r < 0.85:
            return "  "
        if r < 0.9:
            return "\t"
        if r < 0.95:
            return f" /* {self.word()} */ "
        return "\n" + _INDENT * 3

    def word(self) -> str:
        return self.rng.choice(("note", "todo", "x", "keep", "fixme later", "// not a comment"))

    def tokens(self, toks: list[str]) -> str:
        if not toks:
            return ""
        out = [toks[0]]
        for a, b in zip(toks, toks[1:]):
            out.append(self.sep(a, b))
            out.append(b)
        return "".join(out)

    def emit(self, depth: int, text: str) -> None:
        if self.rng is not None and self.rng.random() < self.comment_prob:
            self.lines.append(_INDENT * depth + f"// {self.word()}")
        if self.rng is not None and self.rng.random() < self.comment_prob / 2:
            self.lines.append("")
        self.lines.append(_INDENT * depth + text)

    def braces(self, body: list[Stmt]) -> bool:
        # a lone non-declaration leaf may drop its braces without changing the tree
        if self.rng is None or len(body) != 1 or not body[0].is_leaf or body[0].kind == "decl":
            return True
        return self.rng.random() < 0.7

    def suite(self, depth: int, opener: str, body: list[Stmt], closer: str = "}") -> None:
        if self.braces(body):
            self.emit(depth, opener + " {")
            for s in body:
                self.stmt(depth + 1, s)
            self.emit(depth, closer)
        else:
            self.emit(depth, opener)
            self.stmt(depth + 1, body[0])
            if closer != "}":
                self.emit(depth, closer[1:].lstrip())

    def stmt(self, depth: int, s: Stmt) -> None:
        t = self.tokens
        if s.is_leaf:
            self.emit(depth, t(s.head + [";"]))
        elif s.kind == "if":
            self.suite(depth, f"if ({t(s.head)})", s.body)
            if s.orelse is not None:
                if len(s.orelse) == 1 and s.orelse[0].kind == "if" and self.rng is not None and self.rng.random() < 0.5:
                    self.lines.append(_INDENT * depth + "else")
                    self.stmt(depth, s.orelse[0])
                else:
                    self.suite(depth, "else", s.orelse)
        elif s.kind == "for":
            self.suite(depth, f"for ({t(s.head)})", s.body)
        elif s.kind == "while":
            self.suite(depth, f"while ({t(s.head)})", s.body)
        elif s.kind == "do":
            self.suite(depth, "do", s.body, f"}} while ({t(s.head)});")
        elif s.kind == "switch":
            self.emit(depth, f"switch ({t(s.head)}) {{")
            for label, body in s.arms:
                self.emit(depth + 1, t(label))
                for x in body:
                    self.stmt(depth + 2, x)
            self.emit(depth, "}")
        elif s.kind == "try":
            self.emit(depth, "try {")
            for x in s.body:
                self.stmt(depth + 1, x)
            for param, body in s.arms:
                self.emit(depth, f"}} catch ({t(param)}) {{")
                for x in body:
                    self.stmt(depth + 1, x)
            if s.final is not None:
                self.emit(depth, "} finally {")
                for x in s.final:
                    self.stmt(depth + 1, x)
            self.emit(depth, "}")
        elif s.kind == "block":
            self.emit(depth, "{")
            for x in s.body:
                self.stmt(depth + 1, x)
            self.emit(depth, "}")
        else:
            raise ValueError(f"unknown statement kind {s.kind!r}")

    def method(self, m: Method) -> None:
        params = ", ".join(f"{ty} {name}" for ty, name in m.params)
        head = f"{m.ret} {m.name}({params})" if m.ret else f"{m.name}({params})"
        self.emit(1, f"public {head} {{")
        for s in m.body:
            self.stmt(2, s)
        self.emit(1, "}")

    def program(self, c: ClassModel) -> str:
        self.lines = []
        self.emit(0, f"public class {c.name} {{")
        for member in c.members:
            if isinstance(member, Field):
                self.emit(1, self.tokens(member.tokens + [";"]))
            else:
                self.method(member)
        self.emit(0, "}")
        return "\n".join(self.lines) + "\n"


def render(c: ClassModel, rng: random.Random | None = None, comment_prob: float = 0.1) -> str:
    return Printer(rng, comment_prob).program(c)


# --------------------------------------------------------------------------
# edits

def _lists(c: ClassModel) -> list[list[Stmt]]:
    """Every statement list of the program, including empty ones."""
    out: list[list[Stmt]] = []

    def visit(stmts: list[Stmt]) -> None:
        out.append(stmts)
        for s in stmts:
            if s.kind == "switch":
                for _, body in s.arms:
                    visit(body)
                continue
            if not s.is_leaf:
                visit(s.body)
            if s.orelse is not None:
                visit(s.orelse)
            for _, body in s.arms:
                visit(body)
            if s.final is not None:
                visit(s.final)

    for m in c.methods():
        visit(m.body)
    return out


def _stmts(c: ClassModel, pred=lambda s: True) -> list[tuple[list[Stmt], int]]:
    return [(lst, i) for lst in _lists(c) for i, s in enumerate(lst) if pred(s)]


class Mutator:
    """Applies one structural edit to a copy of a program."""

    def __init__(self, rng: random.Random, gen: Generator):
        self.rng = rng
        self.gen = gen
        self.ops = {
            "insert": self.insert,
            "delete": self.delete,
            "update": self.update,
            "condition": self.condition,
            "add_else": self.add_else,
            "remove_else": self.remove_else,
            "wrap": self.wrap,
            "unwrap": self.unwrap,
            "move": self.move,
            "swap": self.swap,
            "add_method": self.add_method,
            "remove_method": self.remove_method,
            "signature": self.signature,
            "add_field": self.add_field,
            "remove_field": self.remove_field,
            "add_arm": self.add_arm,
            "remove_arm": self.remove_arm,
            "precondition": self.precondition,
        }

    def pick(self, items):
        return self.rng.choice(items) if items else None

    def insert(self, c: ClassModel) -> bool:
        lst = self.pick(_lists(c))
        if lst is None:
            return False
        lst.insert(self.rng.randint(0, len(lst)), self.gen.statement(1))
        return True

    def delete(self, c: ClassModel) -> bool:
        at = self.pick(_stmts(c))
        if at is None:
            return False
        lst, i = at
        del lst[i]
        return True

    def update(self, c: ClassModel) -> bool:
        at = self.pick(_stmts(c, lambda s: s.is_leaf and s.kind not in ("break", "continue")))
        if at is None:
            return False
        s = at[0][at[1]]
        spots = [i for i, tok in enumerate(s.head) if tok in IDENTS or tok.isdigit()]
        if spots:
            i = self.rng.choice(spots)
            s.head[i] = self.rng.choice([x for x in IDENTS if x != s.head[i]]) if s.head[i] in IDENTS else str(int(s.head[i]) + 1)
        elif s.kind == "throw":
            s.head[2] = self.rng.choice([x for x in EXCEPTIONS if x != s.head[2]])
        else:
            s.head.append(self.gen.ident() if len(s.head) == 1 else "1")
        return True

    def condition(self, c: ClassModel) -> bool:
        at = self.pick(_stmts(c, lambda s: s.kind in ("if", "while", "do", "for")))
        if at is None:
            return False
        s = at[0][at[1]]
        if s.kind == "for":
            s.head[7] = self.rng.choice([x for x in IDENTS if x != s.head[7]])
        else:
            s.head = self.gen.condition() if self.rng.random() < 0.5 else [*s.head, "&&", self.gen.ident(), "!=", "null"]
        return True

    def add_else(self, c: ClassModel) -> bool:
        at = self.pick(_stmts(c, lambda s: s.kind == "if" and s.orelse is None))
        if at is None:
            return False
        at[0][at[1]].orelse = self.gen.statements(2, 1, 2)
        return True

    def remove_else(self, c: ClassModel) -> bool:
        at = self.pick(_stmts(c, lambda s: s.kind == "if" and s.orelse is not None))
        if at is None:
            return False
        at[0][at[1]].orelse = None
        return True

    def wrap(self, c: ClassModel) -> bool:
        lst = self.pick([x for x in _lists(c) if x])
        if lst is None:
            return False
        i = self.rng.randrange(len(lst))
        j = self.rng.randint(i + 1, min(len(lst), i + 3))
        kind = self.rng.choice(("if", "if", "try", "while"))
        inner = lst[i:j]
        if kind == "try":
            s = Stmt("try", [], inner, arms=[([self.rng.choice(EXCEPTIONS), "e"], [self.gen.leaf("call")])])
        else:
            s = Stmt(kind, self.gen.condition(), inner)
        lst[i:j] = [s]
        return True

    def unwrap(self, c: ClassModel) -> bool:
        at = self.pick(_stmts(c, lambda s: s.kind in ("if", "block", "while") and s.orelse is None and s.body))
        if at is None:
            return False
        lst, i = at
        lst[i:i + 1] = lst[i].body
        return True

    def move(self, c: ClassModel) -> bool:
        at = self.pick(_stmts(c))
        if at is None:
            return False
        lst, i = at
        s = lst.pop(i)
        # never move a statement into its own subtree
        inside = {id(x) for x in _lists(ClassModel("", [Method("", "", [], [s])]))}
        target = self.pick([x for x in _lists(c) if id(x) not in inside])
        target.insert(self.rng.randint(0, len(target)), s)
        return True

    def swap(self, c: ClassModel) -> bool:
        lst = self.pick([x for x in _lists(c) if len(x) >= 2])
        if lst is None:
            return False
        i = self.rng.randrange(len(lst) - 1)
        lst[i], lst[i + 1] = lst[i + 1], lst[i]
        return True

    def add_method(self, c: ClassModel) -> bool:
        c.members.insert(self.rng.randint(0, len(c.members)), self.gen.method())
        return True

    def remove_method(self, c: ClassModel) -> bool:
        ms = c.methods()
        if len(ms) < 2:
            return False
        c.members.remove(self.rng.choice(ms))
        return True

    def signature(self, c: ClassModel) -> bool:
        m = self.pick(c.methods())
        if m is None:
            return False
        if m.params and self.rng.random() < 0.5:
            i = self.rng.randrange(len(m.params))
            ty, name = m.params[i]
            m.params[i] = (self.rng.choice([t for t in TYPES if t != ty]), name)
        else:
            m.params.append((self.rng.choice(TYPES), self.gen.fresh("p")))
        return True

    def add_field(self, c: ClassModel) -> bool:
        c.members.insert(self.rng.randint(0, len(c.fields())), self.gen.field())
        return True

    def remove_field(self, c: ClassModel) -> bool:
        fs = c.fields()
        if not fs:
            return False
        c.members.remove(self.rng.choice(fs))
        return True

    def add_arm(self, c: ClassModel) -> bool:
        at = self.pick(_stmts(c, lambda s: s.kind in ("switch", "try")))
        if at is None:
            return False
        s = at[0][at[1]]
        if s.kind == "switch":
            used = {a[0][1] for a in s.arms if a[0][0] == "case"}
            free = [str(v) for v in range(20) if str(v) not in used]
            s.arms.insert(0, (["case", self.rng.choice(free), ":"], [self.gen.leaf(), Stmt("break", ["break"])]))
        else:
            s.arms.append((["Throwable", "t"], [self.gen.leaf("call")]))
        return True

    def remove_arm(self, c: ClassModel) -> bool:
        at = self.pick(_stmts(c, lambda s: (s.kind == "switch" and len(s.arms) >= 2)
                                           or (s.kind == "try" and len(s.arms) >= 2)))
        if at is None:
            return False
        s = at[0][at[1]]
        del s.arms[self.rng.randrange(len(s.arms))]
        return True

    def precondition(self, c: ClassModel) -> bool:
        m = self.pick([m for m in c.methods()])
        if m is None:
            return False
        jump = Stmt("return", ["return"] if m.ret in ("void", "") else ["return", "0" if m.ret != "String" else "null"])
        m.body.insert(0, Stmt("if", [self.gen.ident(), "==", "null"], [jump]))
        return True

    def mutate(self, c: ClassModel, ops: tuple[str, ...] | None = None) -> tuple[ClassModel, str]:
        """A mutated deep copy and the name of the edit applied."""
        names = list(ops or self.ops)
        for _ in range(20):
            name = self.rng.choice(names)
            out = copy.deepcopy(c)
            if self.ops[name](out):
                return out, name
        return copy.deepcopy(c), "none"


def random_pair(
    seed: int,
    edits: int | None = None,
    config: GenConfig = GenConfig(),
    ops: tuple[str, ...] | None = None,
    layout: bool = False,
) -> tuple[str, str, list[str]]:
    """(old source, new source, applied edit names) for one seed.

    With ``layout`` the new side is printed with a randomized layout too.
    """
    rng = random.Random(seed)
    gen = Generator(rng, config)
    prog = gen.program()
    mut = Mutator(rng, gen)
    applied = []
    new = prog
    for _ in range(edits if edits is not None else rng.randint(1, 3)):
        new, name = mut.mutate(new, ops)
        applied.append(name)
    old_text = render(prog)
    new_text = render(new, random.Random(seed + 1) if layout else None, comment_prob=0.05)
    return old_text, new_text, applied


def random_program(seed: int, config: GenConfig = GenConfig()) -> ClassModel:
    return Generator(random.Random(seed), config).program()


BENCH_CONFIG = GenConfig(fields=(3, 5), methods=(4, 6), statements=(3, 6), max_depth=2, block_prob=0.3)


def write_corpus(root, count: int, seed: int = 0, config: GenConfig = BENCH_CONFIG, messages=None) -> list[str]:
    """Write ``count`` single-file commits in corpus-directory layout.

    Returns the commit ids in history order.
    """
    root = Path(root)
    ids = []
    width = len(str(max(count - 1, 1)))
    attempt = seed * 1_000_003
    for k in range(count):
        while True:
            old, new, applied = random_pair(attempt, config=config)
            attempt += 1
            if old != new:
                break
        cid = f"c{k:0{width}d}"
        d = root / cid
        (d / "old").mkdir(parents=True, exist_ok=True)
        (d / "new").mkdir(parents=True, exist_ok=True)
        (d / "old" / "Unit.java").write_text(old, encoding="utf-8")
        (d / "new" / "Unit.java").write_text(new, encoding="utf-8")
        message = messages[k % len(messages)] if messages else "edit: " + ", ".join(applied)
        (d / "message.txt").write_text(message + "\n", encoding="utf-8")
        ids.append(cid)
    return ids
