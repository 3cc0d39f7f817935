"""Rule model, matching, and application for affect-shifting text edits."""

from .engine import (
    apply_edits,
    apply_rule_to_text,
    apply_ruleset,
    apply_ruleset_blocks,
    find_matches,
    scope_matches,
)
from .filters import delete_terms, filter_blocks, strip_metrics
from .model import (
    POLITENESS_MODES,
    RULE_KINDS,
    RULESET_VERSION,
    CompiledRuleset,
    DocMetadata,
    Document,
    EditCandidate,
    Rule,
    Span,
    TargetScope,
)
from .politeness import (
    DEFAULT_IMPERATIVE_VERBS,
    DEFAULT_PREAMBLE,
    DEFAULT_THREAT,
    detect_directive,
    rewrite_directive,
)
from .ruleset import parse_ruleset, serialize_ruleset
from .sorry import detect_i_statements, insert_sorry
from .swap import swap_terms

__all__ = [
    "POLITENESS_MODES",
    "RULE_KINDS",
    "RULESET_VERSION",
    "DEFAULT_IMPERATIVE_VERBS",
    "DEFAULT_PREAMBLE",
    "DEFAULT_THREAT",
    "CompiledRuleset",
    "DocMetadata",
    "Document",
    "EditCandidate",
    "Rule",
    "Span",
    "TargetScope",
    "apply_edits",
    "apply_rule_to_text",
    "apply_ruleset",
    "apply_ruleset_blocks",
    "delete_terms",
    "detect_directive",
    "detect_i_statements",
    "filter_blocks",
    "find_matches",
    "insert_sorry",
    "parse_ruleset",
    "rewrite_directive",
    "scope_matches",
    "serialize_ruleset",
    "strip_metrics",
    "swap_terms",
]
