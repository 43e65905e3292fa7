"""Hypothesis strategies for change hunks and patterns."""

from hypothesis import strategies as st

from astchange.diff_engine import ChangeType as C, SourceCodeChange
from astchange.hunking import AstHunk
from astchange.patterns import MicroPattern, PatternDefinition, RelationConstraint, RelationKind
from astchange.syntax import EntityKind as K

# small alphabets so that random patterns actually hit random changes
CTS = [C.STATEMENT_INSERT, C.STATEMENT_DELETE, C.STATEMENT_PARENT_CHANGE, C.ELSE_PART_DELETE]
KINDS = [K.IF, K.RETURN_STATEMENT, K.METHOD_DECLARATION, K.ELSE]


@st.composite
def changes(draw):
    return SourceCodeChange(
        draw(st.sampled_from(CTS)),
        draw(st.sampled_from(KINDS)),
        draw(st.sampled_from(KINDS)),
        node_id=draw(st.integers(0, 5)),
        parent_id=draw(st.integers(0, 5)),
    )


def hunks(max_size: int = 8):
    return st.lists(changes(), min_size=1, max_size=max_size).map(lambda cs: AstHunk(("F.java", 0), cs))


slot = st.one_of(st.none(), st.frozensets(st.sampled_from(KINDS), min_size=1, max_size=2))


@st.composite
def micro(draw, n_matched: int | None = None):
    scope = None
    if n_matched:
        scope = draw(st.one_of(st.none(), st.integers(0, n_matched - 1)))
    return MicroPattern(draw(st.sampled_from(CTS)), draw(slot), draw(slot), scope)


@st.composite
def patterns(draw, max_len: int = 3, with_relations: bool = True, with_undesired: bool = True):
    n = draw(st.integers(1, max_len))
    L = tuple(draw(micro()) for _ in range(n))
    R = ()
    if with_relations and n > 1:
        pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] != t[1])
        R = tuple(RelationConstraint(draw(st.sampled_from(list(RelationKind))), a, b)
                  for a, b in draw(st.lists(pairs, max_size=2)))
    U = tuple(draw(micro(n)) for _ in range(draw(st.integers(0, 2)))) if with_undesired else ()
    return PatternDefinition("RAND", "random", L, R, U)
