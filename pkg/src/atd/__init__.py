"""Ambient tactical deception toolkit.

Small, inspectable machinery for shifting the emotional tone of text:
a valence lexicon, rewrite rules, a budgeted edit planner, an HTTP proxy
that applies plans in flight, and a detector that recovers what was done
to a page by diffing it against a trusted source.
"""

from .detector import build_report, canonicalize, classify_edits, diff_texts
from .lexicon import Lexicon, ValenceScore, load_lexicon, score_text
from .planner import Budget, TransformPlan, apply_plan, plan_edits
from .transforms import (
    CompiledRuleset,
    DocMetadata,
    Document,
    EditCandidate,
    Rule,
    Span,
    TargetScope,
    apply_edits,
    apply_ruleset,
    find_matches,
    parse_ruleset,
    scope_matches,
    serialize_ruleset,
)

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "CompiledRuleset",
    "DocMetadata",
    "Document",
    "EditCandidate",
    "Lexicon",
    "Rule",
    "Span",
    "TargetScope",
    "TransformPlan",
    "ValenceScore",
    "apply_edits",
    "apply_plan",
    "apply_ruleset",
    "build_report",
    "canonicalize",
    "classify_edits",
    "diff_texts",
    "find_matches",
    "load_lexicon",
    "parse_ruleset",
    "plan_edits",
    "scope_matches",
    "score_text",
    "serialize_ruleset",
]
