"""Detect and count source-code change patterns from statement-level AST diffs."""

from .diff_engine import (
    ChangeList,
    ChangeType,
    MatchConfig,
    NodeMapping,
    Side,
    SourceCodeChange,
    extract_changes,
    match_trees,
    render_change,
)
from .hunking import AstHunk, LineHunk, UnanchoredChange, group_ast_hunks, hunks_for, line_diff
from .matcher import MatchAssignment, PatternInstance, classify_hunk, classify_revision, micro_matches
from .miner import (
    Commit,
    MiningOptions,
    MiningReport,
    RevisionPair,
    filter_bugfix,
    ingest_history,
    mine,
)
from .patterns import (
    MicroPattern,
    PatternDefinition,
    PatternSyntaxError,
    PatternValidationError,
    RelationConstraint,
    RelationKind,
    builtin_catalog,
    parse_pattern_file,
    serialize,
)
from .syntax import AstNode, CompilationUnit, EntityKind, ParseError, normalize_value, parse_source

__version__ = "0.1.0"
