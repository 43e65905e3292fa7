"""Statement-level tree differencing.

Both revisions are viewed as statement trees: the virtual file root holds
classes, classes hold fields and methods, methods hold statements. In this
view an If's then-branch statements are direct children of the If (its
Else, when present, comes last) and condition expressions are folded into
the value of their owner. Matching is done per pair of matched methods:
leaves first by bigram Dice similarity, then inner nodes by shared leaves.
"""

from __future__ import annotations

import enum
from bisect import bisect_left
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .syntax import (
    CONDITIONAL_KINDS,
    STATEMENT_KINDS,
    AstNode,
    CompilationUnit,
    EntityKind,
)


class ChangeType(enum.Enum):
    STATEMENT_INSERT = "StatementInsert"
    STATEMENT_DELETE = "StatementDelete"
    STATEMENT_UPDATE = "StatementUpdate"
    STATEMENT_PARENT_CHANGE = "StatementParentChange"
    STATEMENT_ORDERING_CHANGE = "StatementOrderingChange"
    CONDITION_EXPRESSION_CHANGE = "ConditionExpressionChange"
    ELSE_PART_INSERT = "ElsePartInsert"
    ELSE_PART_DELETE = "ElsePartDelete"
    ADDITIONAL_FUNCTIONALITY = "AdditionalFunctionality"
    REMOVED_FUNCTIONALITY = "RemovedFunctionality"
    METHOD_DECLARATION_CHANGE = "MethodDeclarationChange"
    ADDITIONAL_OBJECT_STATE = "AdditionalObjectState"
    REMOVED_OBJECT_STATE = "RemovedObjectState"


CHANGE_LABELS = {
    ChangeType.STATEMENT_INSERT: "Statement insert",
    ChangeType.STATEMENT_DELETE: "Statement delete",
    ChangeType.STATEMENT_UPDATE: "Statement update",
    ChangeType.STATEMENT_PARENT_CHANGE: "Statement parent change",
    ChangeType.STATEMENT_ORDERING_CHANGE: "Statement ordering change",
    ChangeType.CONDITION_EXPRESSION_CHANGE: "Condition expression change",
    ChangeType.ELSE_PART_INSERT: "Else part insert",
    ChangeType.ELSE_PART_DELETE: "Else part delete",
    ChangeType.ADDITIONAL_FUNCTIONALITY: "Additional functionality",
    ChangeType.REMOVED_FUNCTIONALITY: "Removed functionality",
    ChangeType.METHOD_DECLARATION_CHANGE: "Method declaration change",
    ChangeType.ADDITIONAL_OBJECT_STATE: "Additional object state",
    ChangeType.REMOVED_OBJECT_STATE: "Removed object state",
}

ENTITY_LABELS = {
    EntityKind.CLASS: "Class",
    EntityKind.METHOD_DECLARATION: "Method",
    EntityKind.FIELD_DECLARATION: "Field",
    EntityKind.PARAMETER: "Parameter",
    EntityKind.RETURN_TYPE: "Return type",
    EntityKind.BLOCK: "Block",
    EntityKind.IF: "If",
    EntityKind.THEN: "Then",
    EntityKind.ELSE: "Else",
    EntityKind.FOR: "For",
    EntityKind.WHILE: "While",
    EntityKind.DO_WHILE: "Do while",
    EntityKind.SWITCH: "Switch",
    EntityKind.SWITCH_CASE: "Switch case",
    EntityKind.TRY: "Try",
    EntityKind.CATCH_CLAUSE: "Catch clause",
    EntityKind.FINALLY: "Finally",
    EntityKind.CONDITION_EXPRESSION: "Condition",
    EntityKind.ASSIGNMENT: "Assignment",
    EntityKind.VARIABLE_DECLARATION: "Variable declaration",
    EntityKind.METHOD_INVOCATION: "Method invocation",
    EntityKind.RETURN_STATEMENT: "Return",
    EntityKind.BREAK_STATEMENT: "Break",
    EntityKind.CONTINUE_STATEMENT: "Continue",
    EntityKind.THROW_STATEMENT: "Throw",
}

INSERT_TYPES = frozenset({
    ChangeType.STATEMENT_INSERT,
    ChangeType.ELSE_PART_INSERT,
    ChangeType.ADDITIONAL_FUNCTIONALITY,
    ChangeType.ADDITIONAL_OBJECT_STATE,
})
DELETE_TYPES = frozenset({
    ChangeType.STATEMENT_DELETE,
    ChangeType.ELSE_PART_DELETE,
    ChangeType.REMOVED_FUNCTIONALITY,
    ChangeType.REMOVED_OBJECT_STATE,
})
UPDATE_TYPES = frozenset({
    ChangeType.STATEMENT_UPDATE,
    ChangeType.CONDITION_EXPRESSION_CHANGE,
    ChangeType.METHOD_DECLARATION_CHANGE,
})
MOVE_TYPES = frozenset({
    ChangeType.STATEMENT_PARENT_CHANGE,
    ChangeType.STATEMENT_ORDERING_CHANGE,
})
# changes that carry a whole declaration rather than one statement
SUBTREE_TYPES = frozenset({
    ChangeType.ADDITIONAL_FUNCTIONALITY,
    ChangeType.REMOVED_FUNCTIONALITY,
    ChangeType.ADDITIONAL_OBJECT_STATE,
    ChangeType.REMOVED_OBJECT_STATE,
})


class Side(enum.Enum):
    OLD = "old"
    NEW = "new"


@dataclass(frozen=True)
class SourceCodeChange:
    """One classified AST change ``(ct, et, pt)`` with its anchors.

    ``node_id`` and ``parent_id`` are entity identities shared by the two
    revisions: a matched old/new node pair carries one id. ``position`` is
    the index of the affected node among its new parent's children, or -1
    for deletions and updates.
    """

    ct: ChangeType
    et: EntityKind
    pt: EntityKind
    side: Side = Side.NEW
    anchor_span: tuple[int, int] = (0, 0)
    node_value: str = ""
    parent_value: str = ""
    node_id: int = -1
    parent_id: int = -1
    position: int = -1
    other_span: tuple[int, int] | None = None
    old_node: AstNode | None = field(default=None, compare=False, repr=False)
    new_node: AstNode | None = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "ct": self.ct.value,
            "et": self.et.value,
            "pt": self.pt.value,
            "side": self.side.value,
            "start_line": self.anchor_span[0],
            "end_line": self.anchor_span[1],
            "value": self.node_value,
            "text": render_change(self),
        }


def render_change(c: SourceCodeChange) -> str:
    return f"{CHANGE_LABELS[c.ct]} of {ENTITY_LABELS[c.et]} in {ENTITY_LABELS[c.pt]}"


@dataclass(frozen=True)
class MatchConfig:
    leaf_threshold: float = 0.6
    inner_threshold: float = 0.5
    # unmatched inner nodes under matched parents are paired on value similarity
    recovery_threshold: float = 0.6


DEFAULT_CONFIG = MatchConfig()


class NodeMapping:
    """Partial one-to-one mapping between old and new AST nodes."""

    def __init__(self, pairs: dict[AstNode, AstNode] | None = None):
        self._fwd: dict[AstNode, AstNode] = {}
        self._rev: dict[AstNode, AstNode] = {}
        for o, n in (pairs or {}).items():
            self.add(o, n)

    def add(self, old: AstNode, new: AstNode) -> None:
        self._fwd[old] = new
        self._rev[new] = old

    def new_of(self, old: AstNode) -> AstNode | None:
        return self._fwd.get(old)

    def old_of(self, new: AstNode) -> AstNode | None:
        return self._rev.get(new)

    def items(self):
        return self._fwd.items()

    def __contains__(self, old: AstNode) -> bool:
        return old in self._fwd

    def __len__(self) -> int:
        return len(self._fwd)


# --------------------------------------------------------------------------
# statement-tree view

class _Node:
    __slots__ = ("kind", "value", "ast", "parent", "children", "pre", "cond", "leaves")

    def __init__(self, kind: EntityKind, value: str, ast: AstNode | None):
        self.kind = kind
        self.value = value
        self.ast = ast
        self.parent: _Node | None = None
        self.children: list[_Node] = []
        self.pre = 0
        self.cond: AstNode | None = None
        self.leaves: frozenset[_Node] = frozenset()

    def add(self, child: _Node) -> None:
        child.parent = self
        self.children.append(child)

    def preorder(self) -> Iterator[_Node]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def shape(self) -> tuple:
        return (self.kind, self.value, tuple(c.shape() for c in self.children))

    @property
    def span(self) -> tuple[int, int]:
        return self.ast.span if self.ast is not None else (1, 1)


def _build(ast: AstNode) -> _Node:
    node = _Node(ast.kind, ast.value, ast)
    for c in ast.children:
        if c.kind is EntityKind.CONDITION_EXPRESSION:
            node.cond = c
        elif c.kind is EntityKind.THEN:
            for g in c.children:
                node.add(_build(g))
        else:
            node.add(_build(c))
    return node


def _view(unit: CompilationUnit) -> _Node:
    root = _Node(EntityKind.CLASS, "", None)
    for cls in unit.classes():
        root.add(_build(cls))
    for i, node in enumerate(root.preorder()):
        node.pre = i
    return root


def _is_leaf(node: _Node) -> bool:
    return node.kind in STATEMENT_KINDS


# --------------------------------------------------------------------------
# matching

@lru_cache(maxsize=65536)
def _bigrams(s: str) -> frozenset[str]:
    return frozenset(s[i:i + 2] for i in range(len(s) - 1))


def dice(a: str, b: str) -> float:
    """Dice coefficient of the character-bigram sets of two strings."""
    if a == b:
        return 1.0
    ba, bb = _bigrams(a), _bigrams(b)
    if not ba or not bb:
        return 0.0
    return 2.0 * len(ba & bb) / (len(ba) + len(bb))


def _method_name(signature: str) -> str:
    head = signature.split("(", 1)[0]
    return head.split()[-1] if head.split() else signature


class _Matcher:
    def __init__(self, config: MatchConfig):
        self.config = config
        self.m: dict[_Node, _Node] = {}
        self.rm: dict[_Node, _Node] = {}

    def link(self, o: _Node, n: _Node) -> None:
        self.m[o] = n
        self.rm[n] = o

    def pair(self, olds: list[_Node], news: list[_Node], kinds, key) -> None:
        for o in olds:
            if o in self.m or o.kind not in kinds:
                continue
            ko = key(o)
            for n in news:
                if n in self.rm or n.kind is not o.kind:
                    continue
                if key(n) == ko:
                    self.link(o, n)
                    break

    def run(self, ro: _Node, rn: _Node) -> None:
        self.link(ro, rn)
        self.pair(ro.children, rn.children, {EntityKind.CLASS}, lambda x: x.value)
        for co, cn in [(o, self.m[o]) for o in ro.children if o in self.m]:
            self.members(co, cn)

    def members(self, co: _Node, cn: _Node) -> None:
        method = {EntityKind.METHOD_DECLARATION}
        self.pair(co.children, cn.children, method, lambda x: x.value)
        self.pair(co.children, cn.children, method, lambda x: _method_name(x.value))
        self.pair(co.children, cn.children, {EntityKind.FIELD_DECLARATION}, lambda x: x.value)
        for mo in co.children:
            mn = self.m.get(mo)
            if mn is not None and mo.kind is EntityKind.METHOD_DECLARATION:
                self.body(mo, mn)

    def body(self, mo: _Node, mn: _Node) -> None:
        if [c.shape() for c in mo.children] == [c.shape() for c in mn.children]:
            for a, b in zip(mo.preorder(), mn.preorder()):
                if a is not mo:
                    self.link(a, b)
            return
        olds = list(mo.preorder())[1:]
        news = list(mn.preorder())[1:]
        # pre-order index relative to the method, so tie-breaks do not
        # depend on where the method sits in the file
        rel = {}
        for x in olds:
            rel[x] = x.pre - mo.pre
        for x in news:
            rel[x] = x.pre - mn.pre

        cands = []
        leaves_n_by_kind: dict[EntityKind, list[_Node]] = {}
        for n in news:
            if _is_leaf(n):
                leaves_n_by_kind.setdefault(n.kind, []).append(n)
        for o in olds:
            if not _is_leaf(o):
                continue
            for n in leaves_n_by_kind.get(o.kind, ()):
                sim = dice(o.value, n.value)
                if sim >= self.config.leaf_threshold:
                    cands.append((-sim, abs(rel[o] - rel[n]), rel[o], rel[n], o, n))
        cands.sort(key=lambda c: c[:4])
        for *_, o, n in cands:
            if o not in self.m and n not in self.rm:
                self.link(o, n)

        _collect_leaves(mo)
        _collect_leaves(mn)
        inner_o = [o for o in olds if not _is_leaf(o)]
        inner_n = [n for n in news if not _is_leaf(n)]
        cands = []
        for o in inner_o:
            if not o.leaves:
                continue
            mapped = {self.m[l] for l in o.leaves if l in self.m}
            if not mapped:
                continue
            for n in inner_n:
                if n.kind is not o.kind or not n.leaves:
                    continue
                common = len(mapped & n.leaves)
                score = common / max(len(o.leaves), len(n.leaves))
                if common and score >= self.config.inner_threshold:
                    cands.append((-score, abs(rel[o] - rel[n]), rel[o], rel[n], o, n))
        cands.sort(key=lambda c: c[:4])
        for *_, o, n in cands:
            if o not in self.m and n not in self.rm:
                self.link(o, n)

        for n in news:
            if n in self.rm or _is_leaf(n):
                continue
            po = self.rm.get(n.parent)
            if po is None:
                continue
            best = None
            for o in po.children:
                if o in self.m or o.kind is not n.kind:
                    continue
                sim = dice(o.value, n.value)
                if sim < self.config.recovery_threshold:
                    continue
                key = (-sim, abs(rel[o] - rel[n]), rel[o])
                if best is None or key < best[0]:
                    best = (key, o)
            if best is not None:
                self.link(best[1], n)


def _collect_leaves(root: _Node) -> frozenset:
    acc: set[_Node] = set()
    for c in root.children:
        acc |= _collect_leaves(c)
        if _is_leaf(c):
            acc.add(c)
    root.leaves = frozenset(acc)
    return root.leaves


def _node_mapping(m: dict[_Node, _Node]) -> NodeMapping:
    mapping = NodeMapping()
    for o, n in m.items():
        if o.ast is None:
            continue
        mapping.add(o.ast, n.ast)
        if o.cond is not None and n.cond is not None:
            mapping.add(o.cond, n.cond)
        if o.kind is EntityKind.IF:
            to, tn = o.ast.child(EntityKind.THEN), n.ast.child(EntityKind.THEN)
            if to is not None and tn is not None:
                mapping.add(to, tn)
    return mapping


def match_trees(old: CompilationUnit, new: CompilationUnit, config: MatchConfig = DEFAULT_CONFIG) -> NodeMapping:
    matcher = _Matcher(config)
    matcher.run(_view(old), _view(new))
    return _node_mapping(matcher.m)


# --------------------------------------------------------------------------
# change extraction

@dataclass
class ChangeList(Sequence):
    changes: list[SourceCodeChange]
    old_unit: CompilationUnit
    new_unit: CompilationUnit
    mapping: NodeMapping
    entity_ids: dict[AstNode, int] = field(default_factory=dict, repr=False)

    def __getitem__(self, i):
        return self.changes[i]

    def __len__(self) -> int:
        return len(self.changes)

    def entity_id(self, node: AstNode | None) -> int:
        """Entity id of an AST node; the file root is 0."""
        if node is None:
            return 0
        return self.entity_ids[node]

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.changes]


def _longest_increasing(seq: list[int]) -> set[int]:
    """Positions (into seq) of one longest strictly increasing subsequence."""
    tails: list[int] = []
    tail_pos: list[int] = []
    prev = [-1] * len(seq)
    for i, v in enumerate(seq):
        k = bisect_left(tails, v)
        if k == len(tails):
            tails.append(v)
            tail_pos.append(i)
        else:
            tails[k] = v
            tail_pos[k] = i
        prev[i] = tail_pos[k - 1] if k else -1
    keep = set()
    i = tail_pos[-1] if tail_pos else -1
    while i >= 0:
        keep.add(i)
        i = prev[i]
    return keep


def _insert_type(kind: EntityKind) -> ChangeType:
    if kind in (EntityKind.METHOD_DECLARATION, EntityKind.CLASS):
        return ChangeType.ADDITIONAL_FUNCTIONALITY
    if kind is EntityKind.FIELD_DECLARATION:
        return ChangeType.ADDITIONAL_OBJECT_STATE
    if kind is EntityKind.ELSE:
        return ChangeType.ELSE_PART_INSERT
    return ChangeType.STATEMENT_INSERT


def _delete_type(kind: EntityKind) -> ChangeType:
    if kind in (EntityKind.METHOD_DECLARATION, EntityKind.CLASS):
        return ChangeType.REMOVED_FUNCTIONALITY
    if kind is EntityKind.FIELD_DECLARATION:
        return ChangeType.REMOVED_OBJECT_STATE
    if kind is EntityKind.ELSE:
        return ChangeType.ELSE_PART_DELETE
    return ChangeType.STATEMENT_DELETE


def extract_changes(old: CompilationUnit, new: CompilationUnit, config: MatchConfig = DEFAULT_CONFIG) -> ChangeList:
    ro, rn = _view(old), _view(new)
    matcher = _Matcher(config)
    matcher.run(ro, rn)
    m, rm = matcher.m, matcher.rm

    ids: dict[_Node, int] = {}
    counter = 0
    for o in ro.preorder():
        ids[o] = counter
        if o in m:
            ids[m[o]] = counter
        counter += 1
    for n in rn.preorder():
        if n not in ids:
            ids[n] = counter
            counter += 1
    cond_ids: dict[_Node, int] = {}

    out: list[tuple[tuple, SourceCodeChange]] = []

    def emit(ct, node: _Node, et, parent: _Node, side: Side, span, other=None, *,
             node_id=None, position=-1, old_ast=None, new_ast=None, value=None):
        change = SourceCodeChange(
            ct=ct,
            et=et,
            pt=parent.kind,
            side=side,
            anchor_span=span,
            node_value=node.value if value is None else value,
            parent_value=parent.value,
            node_id=ids[node] if node_id is None else node_id,
            parent_id=ids[parent],
            position=position,
            other_span=other,
            old_node=old_ast,
            new_node=new_ast,
        )
        key = (span[0], 0 if side is Side.OLD else 1, node.pre, ct.value)
        out.append((key, change))

    def removed(node: _Node) -> Iterator[_Node]:
        stack = [node]
        while stack:
            x = stack.pop()
            if x not in m and x is not ro:
                yield x
                if _delete_type(x.kind) in SUBTREE_TYPES:
                    continue
            stack.extend(reversed(x.children))

    for o in removed(ro):
        emit(_delete_type(o.kind), o, o.kind, o.parent, Side.OLD, o.span, old_ast=o.ast)

    stack = [rn]
    while stack:
        n = stack.pop()
        if n not in rm and n is not rn:
            ct = _insert_type(n.kind)
            emit(ct, n, n.kind, n.parent, Side.NEW, n.span,
                 position=n.parent.children.index(n), new_ast=n.ast)
            if ct in SUBTREE_TYPES:
                continue
        stack.extend(reversed(n.children))

    for o, n in m.items():
        if o is ro:
            continue
        if o.value != n.value:
            if n.kind is EntityKind.METHOD_DECLARATION:
                emit(ChangeType.METHOD_DECLARATION_CHANGE, n, n.kind, n.parent, Side.NEW, n.span,
                     o.span, old_ast=o.ast, new_ast=n.ast)
            elif n.kind in CONDITIONAL_KINDS and n.cond is not None:
                cid = cond_ids.setdefault(n, counter + len(cond_ids))
                cspan = n.cond.span
                ospan = o.cond.span if o.cond is not None else o.span
                emit(ChangeType.CONDITION_EXPRESSION_CHANGE, n, EntityKind.CONDITION_EXPRESSION, n,
                     Side.NEW, cspan, ospan, node_id=cid, old_ast=o.cond, new_ast=n.cond)
            else:
                emit(ChangeType.STATEMENT_UPDATE, n, n.kind, n.parent, Side.NEW, n.span,
                     o.span, old_ast=o.ast, new_ast=n.ast)
        if m.get(o.parent) is not n.parent:
            emit(ChangeType.STATEMENT_PARENT_CHANGE, n, n.kind, n.parent, Side.NEW, n.span, o.span,
                 position=n.parent.children.index(n), old_ast=o.ast, new_ast=n.ast)

    for po, pn in m.items():
        stay = [c for c in pn.children if c in rm and rm[c].parent is po]
        if len(stay) < 2:
            continue
        index_o = {id(c): i for i, c in enumerate(po.children)}
        seq = [index_o[id(rm[c])] for c in stay]
        keep = _longest_increasing(seq)
        for i, n in enumerate(stay):
            if i not in keep:
                o = rm[n]
                emit(ChangeType.STATEMENT_ORDERING_CHANGE, n, n.kind, pn, Side.NEW, n.span, o.span,
                     position=pn.children.index(n), old_ast=o.ast, new_ast=n.ast)

    out.sort(key=lambda kc: kc[0])
    entity_ids = {x.ast: i for x, i in ids.items() if x.ast is not None}
    return ChangeList([c for _, c in out], old, new, _node_mapping(m), entity_ids)
