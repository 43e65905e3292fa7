"""Change patterns: an ordered list of micro-patterns, relations among the
matched changes, and undesired changes that must be absent.

Pattern files are line oriented::

    pattern IF-APCJ "Addition of Precondition Check with Jump"
      change STATEMENT_INSERT IF *
      change STATEMENT_INSERT RETURN IF
      relation parent_of 0 1
      undesired none
    end

Keywords are case-insensitive, ``*`` is the wildcard, and an entity slot may
list alternatives joined by ``|`` (``FOR|WHILE|DO_WHILE``). Undesired
entries take an optional ``scoped <index>`` suffix. ``#`` starts a comment.
"""

from __future__ import annotations

import enum
import re
import shlex
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .diff_engine import ChangeType
from .syntax import EntityKind


class PatternSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


class PatternValidationError(ValueError):
    pass


class RelationKind(enum.Enum):
    PARENT_OF = "parent_of"
    SAME_PARENT = "same_parent"


@dataclass(frozen=True)
class MicroPattern:
    """``(ct, et, pt)``; ``None`` in et or pt is the wildcard."""

    ct: ChangeType
    et: frozenset[EntityKind] | None = None
    pt: frozenset[EntityKind] | None = None
    # undesired entries only: index of the matched micro-pattern they relate to
    scope: int | None = None


@dataclass(frozen=True)
class RelationConstraint:
    kind: RelationKind
    subject: int
    object: int


@dataclass(frozen=True)
class PatternDefinition:
    id: str
    name: str
    changes: tuple[MicroPattern, ...]
    relations: tuple[RelationConstraint, ...] = ()
    undesired: tuple[MicroPattern, ...] = ()

    def __post_init__(self):
        validate(self)


def mp(ct: ChangeType, et=None, pt=None, scope: int | None = None) -> MicroPattern:
    """Shorthand that accepts single kinds or iterables of kinds."""
    return MicroPattern(ct, _kinds(et), _kinds(pt), scope)


def _kinds(x) -> frozenset[EntityKind] | None:
    if x is None:
        return None
    if isinstance(x, EntityKind):
        return frozenset({x})
    return frozenset(x)


def validate(p: PatternDefinition) -> None:
    if not p.changes:
        raise PatternValidationError(f"pattern {p.id}: change list is empty")
    for m in (*p.changes, *p.undesired):
        if not isinstance(m.ct, ChangeType):
            raise PatternValidationError(f"pattern {p.id}: change type is mandatory and cannot be a wildcard")
        for slot in (m.et, m.pt):
            if slot is not None and not slot:
                raise PatternValidationError(f"pattern {p.id}: empty entity alternative")
    n = len(p.changes)
    for r in p.relations:
        if not (0 <= r.subject < n and 0 <= r.object < n):
            raise PatternValidationError(f"pattern {p.id}: relation index out of range for {n} changes")
        if r.subject == r.object:
            raise PatternValidationError(f"pattern {p.id}: relation links a change to itself")
    for u in p.undesired:
        if u.scope is not None and not 0 <= u.scope < n:
            raise PatternValidationError(f"pattern {p.id}: undesired scope {u.scope} out of range")


# --------------------------------------------------------------------------
# file format

def _canon(word: str) -> str:
    return re.sub(r"[_\s-]", "", word).lower()


_CHANGE_NAMES = {_canon(ct.name): ct for ct in ChangeType} | {_canon(ct.value): ct for ct in ChangeType}

_ENTITY_NAMES = {_canon(k.name): k for k in EntityKind} | {_canon(k.value): k for k in EntityKind}
_ENTITY_NAMES.update({
    "method": EntityKind.METHOD_DECLARATION,
    "field": EntityKind.FIELD_DECLARATION,
    "condition": EntityKind.CONDITION_EXPRESSION,
    "return": EntityKind.RETURN_STATEMENT,
    "break": EntityKind.BREAK_STATEMENT,
    "continue": EntityKind.CONTINUE_STATEMENT,
    "throw": EntityKind.THROW_STATEMENT,
    "catch": EntityKind.CATCH_CLAUSE,
    "case": EntityKind.SWITCH_CASE,
    "invocation": EntityKind.METHOD_INVOCATION,
})

# short names used when writing files
_ENTITY_TOKENS = {k: k.name for k in EntityKind} | {
    EntityKind.RETURN_STATEMENT: "RETURN",
    EntityKind.BREAK_STATEMENT: "BREAK",
    EntityKind.CONTINUE_STATEMENT: "CONTINUE",
    EntityKind.THROW_STATEMENT: "THROW",
}


def _parse_kinds(word: str, line: int) -> frozenset[EntityKind] | None:
    if word == "*":
        return None
    kinds = set()
    for part in word.split("|"):
        kind = _ENTITY_NAMES.get(_canon(part))
        if kind is None:
            raise PatternSyntaxError(f"unknown entity type {part!r}", line)
        kinds.add(kind)
    return frozenset(kinds)


def _parse_micro(words: list[str], line: int) -> MicroPattern:
    if not words:
        raise PatternSyntaxError("missing change type", line)
    if words[0] == "*":
        raise PatternValidationError(f"line {line}: change type cannot be a wildcard")
    ct = _CHANGE_NAMES.get(_canon(words[0]))
    if ct is None:
        raise PatternSyntaxError(f"unknown change type {words[0]!r}", line)
    rest = words[1:]
    scope = None
    if len(rest) >= 2 and rest[-2].lower() == "scoped":
        try:
            scope = int(rest[-1])
        except ValueError:
            raise PatternSyntaxError(f"bad scope index {rest[-1]!r}", line) from None
        rest = rest[:-2]
    if len(rest) > 2:
        raise PatternSyntaxError("too many fields in change triple", line)
    et = _parse_kinds(rest[0], line) if len(rest) > 0 else None
    pt = _parse_kinds(rest[1], line) if len(rest) > 1 else None
    return MicroPattern(ct, et, pt, scope)


def parse_pattern_file(text: str) -> list[PatternDefinition]:
    defs: list[PatternDefinition] = []
    current: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            words = shlex.split(line)
        except ValueError as exc:
            raise PatternSyntaxError(str(exc), lineno) from None
        head = words[0].lower()
        if head == "pattern":
            if current is not None:
                raise PatternSyntaxError("nested 'pattern' (missing 'end')", lineno)
            if len(words) < 2 or len(words) > 3:
                raise PatternSyntaxError("expected: pattern <ID> \"<name>\"", lineno)
            current = {"id": words[1], "name": words[2] if len(words) == 3 else words[1],
                       "changes": [], "relations": [], "undesired": [], "line": lineno}
            continue
        if current is None:
            raise PatternSyntaxError(f"{words[0]!r} outside of a pattern block", lineno)
        if head == "change":
            m = _parse_micro(words[1:], lineno)
            if m.scope is not None:
                raise PatternSyntaxError("'scoped' is only allowed on undesired entries", lineno)
            current["changes"].append(m)
        elif head == "relation":
            if len(words) != 4:
                raise PatternSyntaxError("expected: relation <kind> <i> <j>", lineno)
            try:
                kind = RelationKind(words[1].lower())
            except ValueError:
                raise PatternSyntaxError(f"unknown relation {words[1]!r}", lineno) from None
            try:
                i, j = int(words[2]), int(words[3])
            except ValueError:
                raise PatternSyntaxError("relation indices must be integers", lineno) from None
            current["relations"].append(RelationConstraint(kind, i, j))
        elif head == "undesired":
            if len(words) == 2 and words[1].lower() == "none":
                continue
            current["undesired"].append(_parse_micro(words[1:], lineno))
        elif head == "end":
            try:
                defs.append(PatternDefinition(
                    current["id"], current["name"], tuple(current["changes"]),
                    tuple(current["relations"]), tuple(current["undesired"]),
                ))
            except PatternValidationError as exc:
                raise PatternValidationError(f"line {current['line']}: {exc}") from None
            current = None
        else:
            raise PatternSyntaxError(f"unknown keyword {words[0]!r}", lineno)
    if current is not None:
        raise PatternSyntaxError("missing 'end'", current["line"])
    return defs


def _format_kinds(kinds: frozenset[EntityKind] | None) -> str:
    if kinds is None:
        return "*"
    return "|".join(sorted(_ENTITY_TOKENS[k] for k in kinds))


def _format_micro(m: MicroPattern) -> str:
    text = f"{m.ct.name} {_format_kinds(m.et)} {_format_kinds(m.pt)}"
    if m.scope is not None:
        text += f" scoped {m.scope}"
    return text


def serialize(defs: list[PatternDefinition]) -> str:
    out = []
    for p in defs:
        name = p.name.replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'pattern {p.id} "{name}"')
        for m in p.changes:
            out.append(f"  change {_format_micro(m)}")
        for r in p.relations:
            out.append(f"  relation {r.kind.value} {r.subject} {r.object}")
        if not p.undesired:
            out.append("  undesired none")
        for u in p.undesired:
            out.append(f"  undesired {_format_micro(u)}")
        out.append("end")
        out.append("")
    return "\n".join(out)


def load_patterns(path: str | Path) -> list[PatternDefinition]:
    """Load one pattern file, or every ``*.pat`` file of a directory."""
    path = Path(path)
    if path.is_dir():
        defs = []
        for f in sorted(path.glob("*.pat")):
            defs.extend(parse_pattern_file(f.read_text(encoding="utf-8")))
        return defs
    return parse_pattern_file(path.read_text(encoding="utf-8"))


def builtin_catalog() -> list[PatternDefinition]:
    """The 18 context-independent bug-fix patterns."""
    text = resources.files("astchange").joinpath("data/catalog.pat").read_text(encoding="utf-8")
    return parse_pattern_file(text)


CATALOG_IDS = (
    "IF-CC", "MD-ADD", "CF-ADD", "IF-ABR", "MD-CHG", "MD-RMV", "CF-RMV", "IF-APCJ", "TY-ARCB-add",
    "IF-APC", "SW-ARSB-add", "TY-ARCB-rm", "IF-RMV", "LP-CC", "IF-RBR", "SW-ARSB-rm", "TY-ARTC-rm",
    "TY-ARTC-add",
)
