"""Data model for rule-driven text transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

RULE_KINDS = (
    "insert_sorry",
    "swap",
    "politeness",
    "delete_term",
    "filter_block",
    "strip_metric",
)

POLITENESS_MODES = ("supportive", "downgrader", "aggravating")

RULESET_VERSION = 1


class Span(NamedTuple):
    """Half-open character range inside one block; length 0 is an insertion point."""

    start: int
    length: int

    @property
    def end(self) -> int:
        return self.start + self.length


@dataclass(frozen=True, slots=True)
class DocMetadata:
    source_url: str | None = None
    sender: str | None = None


@dataclass(frozen=True, slots=True)
class Document:
    """Ordered text blocks plus where they came from.

    A block is one unit of displayed text: an email body, a post, or an
    HTML text node.  Transformations keep block boundaries intact except
    for block filtering, which may drop whole blocks.
    """

    blocks: tuple[str, ...]
    metadata: DocMetadata = DocMetadata()

    @classmethod
    def from_blocks(
        cls,
        blocks: list[str] | tuple[str, ...],
        source_url: str | None = None,
        sender: str | None = None,
    ) -> Document:
        return cls(tuple(blocks), DocMetadata(source_url=source_url, sender=sender))


@dataclass(frozen=True, slots=True)
class TargetScope:
    """Selectors restricting where a ruleset applies; empty lists match everything."""

    url_patterns: tuple[str, ...] = ()
    senders: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class Rule:
    """One declarative transformation.

    ``intent`` is the fallback valence delta per application, used when the
    lexicon is silent about the words an edit touches.  Kind-specific
    parameters live in the optional fields; a symmetric swap rule completes
    its pair list with the reversed pairs at construction.
    """

    id: str
    kind: str
    intent: float
    pairs: tuple[tuple[str, str], ...] = ()
    symmetric: bool = False
    mode: str | None = None
    threat: str | None = None
    preamble: str | None = None
    terms: tuple[str, ...] = ()
    nouns: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown rule kind: {self.kind!r}")
        if not self.id:
            raise ValueError("rule id must be non-empty")
        if not -1.0 <= self.intent <= 1.0:
            raise ValueError(f"intent outside [-1, 1]: {self.intent}")
        if self.kind == "swap":
            if not self.pairs:
                raise ValueError("swap rule needs at least one pair")
            for left, right in self.pairs:
                if not left or not right:
                    raise ValueError("swap pair sides must be non-empty")
            if self.symmetric:
                object.__setattr__(self, "pairs", _close_pairs(self.pairs))
            lefts = [left.casefold() for left, _ in self.pairs]
            if len(set(lefts)) != len(lefts):
                raise ValueError("swap pairs repeat a left-hand term")
        elif self.kind == "politeness":
            if self.mode not in POLITENESS_MODES:
                raise ValueError(f"politeness mode must be one of {POLITENESS_MODES}")
        elif self.kind in ("delete_term", "filter_block"):
            if not self.terms or not all(self.terms):
                raise ValueError(f"{self.kind} rule needs a non-empty term list")
        elif self.kind == "strip_metric":
            if not self.nouns or not all(self.nouns):
                raise ValueError("strip_metric rule needs a non-empty noun list")


def _close_pairs(pairs: tuple[tuple[str, str], ...]) -> tuple[tuple[str, str], ...]:
    """Append missing reversed pairs, keeping declaration order first."""
    seen = {left.casefold() for left, _ in pairs}
    extra = []
    for left, right in pairs:
        if right.casefold() not in seen:
            seen.add(right.casefold())
            extra.append((right, left))
    return pairs + tuple(extra)


@dataclass(frozen=True, slots=True)
class CompiledRuleset:
    version: int
    scope: TargetScope
    rules: tuple[Rule, ...]

    def __post_init__(self) -> None:
        ids = [rule.id for rule in self.rules]
        if len(set(ids)) != len(ids):
            raise ValueError("rule ids must be unique within a ruleset")

    def rule_by_id(self, rule_id: str) -> Rule | None:
        for rule in self.rules:
            if rule.id == rule_id:
                return rule
        return None


@dataclass(frozen=True, slots=True)
class EditCandidate:
    """A located candidate edit: replace ``span`` of block ``block_index``.

    cost_chars counts characters inserted plus deleted, so an insertion
    costs len(replacement) and a deletion costs span.length.
    """

    block_index: int
    span: Span
    replacement: str
    rule_id: str
    delta_valence: float
    cost_chars: int
