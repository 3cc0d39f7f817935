"""Candidate generation, edit application, and targeting scope checks."""

from __future__ import annotations

from fnmatch import fnmatchcase
from typing import Iterable, Sequence

from ..errors import EditError
from ..lexicon import Lexicon, score_text
from .filters import contains_term, delete_spans, delete_terms, metric_spans, strip_metrics
from .model import CompiledRuleset, DocMetadata, Document, EditCandidate, Rule, Span, TargetScope
from .politeness import directive_rewrites
from .sorry import apology_insertions, insert_sorry
from .swap import swap_matches, swap_terms


def scope_matches(scope: TargetScope, metadata: DocMetadata) -> bool:
    """True when *metadata* falls inside the scope's selectors.

    Empty selector lists match everything; an absent metadata field only
    matches an empty selector list.
    """
    if scope.url_patterns:
        url = metadata.source_url
        if url is None or not any(fnmatchcase(url, p) for p in scope.url_patterns):
            return False
    if scope.senders:
        sender = metadata.sender
        if sender is None:
            return False
        folded = sender.casefold()
        if not any(folded == s.casefold() for s in scope.senders):
            return False
    return True


def _rule_edits(rule: Rule, block: str) -> list[tuple[Span, str]]:
    """Raw (span, replacement) edits one rule proposes for one block."""
    if rule.kind == "insert_sorry":
        return [(Span(pos, 0), lead) for pos, lead in apology_insertions(block)]
    if rule.kind == "swap":
        return swap_matches(block, rule.pairs)
    if rule.kind == "politeness":
        return directive_rewrites(
            block, rule.mode, preamble=rule.preamble, threat=rule.threat
        )
    if rule.kind == "delete_term":
        return [(span, "") for span in delete_spans(block, rule.terms)]
    if rule.kind == "filter_block":
        # The span edit model cannot drop a block, so the candidate empties
        # it; the direct filter_blocks path removes blocks outright.
        if block and contains_term(block, rule.terms):
            return [(Span(0, len(block)), "")]
        return []
    if rule.kind == "strip_metric":
        return [(span, "") for span in metric_spans(block, rule.nouns)]
    raise AssertionError(f"unhandled rule kind {rule.kind!r}")


def find_matches(
    ruleset: CompiledRuleset, doc: Document, lexicon: Lexicon
) -> list[EditCandidate]:
    """Every candidate edit any rule proposes anywhere in the document.

    Candidates from different rules may overlap; the planner resolves
    conflicts.  delta_valence is the lexicon raw-score shift the lone edit
    would cause, falling back to the rule's intent when the lexicon is
    silent.  Ordering is (block, span start, rule declaration order).
    """
    candidates: list[tuple[int, int, int, EditCandidate]] = []
    for block_index, block in enumerate(doc.blocks):
        before: float | None = None  # scored lazily; most blocks have no edits
        for rule_index, rule in enumerate(ruleset.rules):
            for span, replacement in _rule_edits(rule, block):
                if block[span.start : span.end] == replacement:
                    continue
                if before is None:
                    before = score_text(lexicon, block).raw
                edited = block[: span.start] + replacement + block[span.end :]
                delta = score_text(lexicon, edited).raw - before
                if delta == 0.0:
                    delta = rule.intent
                candidate = EditCandidate(
                    block_index=block_index,
                    span=span,
                    replacement=replacement,
                    rule_id=rule.id,
                    delta_valence=delta,
                    cost_chars=len(replacement) + span.length,
                )
                candidates.append((block_index, span.start, rule_index, candidate))
    candidates.sort(key=lambda entry: entry[:3])
    return [candidate for _, _, _, candidate in candidates]


def apply_edits(doc: Document, edits: Iterable[EditCandidate]) -> Document:
    """Apply non-overlapping edits, right-to-left inside each block.

    Bytes outside the edited spans are untouched.  Overlapping spans, two
    edits starting at the same offset, or spans outside their block raise
    EditError.
    """
    per_block: dict[int, list[EditCandidate]] = {}
    for edit in edits:
        if not 0 <= edit.block_index < len(doc.blocks):
            raise EditError(f"edit targets missing block {edit.block_index}")
        block = doc.blocks[edit.block_index]
        if edit.span.start < 0 or edit.span.end > len(block):
            raise EditError(
                f"span {edit.span} outside block {edit.block_index} of length {len(block)}"
            )
        per_block.setdefault(edit.block_index, []).append(edit)

    blocks = list(doc.blocks)
    for block_index, block_edits in per_block.items():
        block_edits.sort(key=lambda e: (e.span.start, e.span.end))
        for previous, current in zip(block_edits, block_edits[1:]):
            if previous.span.end > current.span.start or (
                previous.span.start == current.span.start
            ):
                raise EditError(
                    f"overlapping edits in block {block_index}: "
                    f"{previous.span} and {current.span}"
                )
        text = blocks[block_index]
        for edit in reversed(block_edits):
            text = text[: edit.span.start] + edit.replacement + text[edit.span.end :]
        blocks[block_index] = text
    return Document(tuple(blocks), doc.metadata)


def apply_rule_to_text(rule: Rule, text: str) -> str:
    """Apply one rule exhaustively to a flat text (no block structure).

    filter_block treats the whole text as a single block.  This is the
    sequential-application primitive behind apply_ruleset and the replay
    half of edit classification.
    """
    if rule.kind == "insert_sorry":
        return insert_sorry(text)
    if rule.kind == "swap":
        return swap_terms(text, rule.pairs)
    if rule.kind == "politeness":
        pieces = []
        last = 0
        for span, replacement in directive_rewrites(
            text, rule.mode, preamble=rule.preamble, threat=rule.threat
        ):
            pieces.append(text[last : span.start])
            pieces.append(replacement)
            last = span.end
        pieces.append(text[last:])
        return "".join(pieces)
    if rule.kind == "delete_term":
        return delete_terms(text, rule.terms)
    if rule.kind == "filter_block":
        return "" if contains_term(text, rule.terms) else text
    if rule.kind == "strip_metric":
        return strip_metrics(text, rule.nouns)
    raise AssertionError(f"unhandled rule kind {rule.kind!r}")


def apply_ruleset_blocks(
    blocks: Sequence[str], ruleset: CompiledRuleset
) -> list[str | None]:
    """Apply every rule in declaration order to each block.

    Returns one entry per input block: the transformed text, or None when a
    filter_block rule dropped the block.
    """
    out: list[str | None] = []
    for block in blocks:
        text = block
        dropped = False
        for rule in ruleset.rules:
            if rule.kind == "filter_block":
                if contains_term(text, rule.terms):
                    dropped = True
                    break
            else:
                text = apply_rule_to_text(rule, text)
        out.append(None if dropped else text)
    return out


def apply_ruleset(doc: Document, ruleset: CompiledRuleset) -> Document:
    """Unbudgeted transform: every rule applied fully, in declaration order."""
    transformed = apply_ruleset_blocks(doc.blocks, ruleset)
    return Document(tuple(b for b in transformed if b is not None), doc.metadata)
