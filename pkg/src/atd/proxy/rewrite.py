"""Budgeted rewriting of whole pages.

Both entry points run the same pipeline: carve the input into blocks,
collect candidate edits, plan under the budget, apply the winners back.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from ..lexicon import Lexicon
from ..planner import Budget, apply_plan, plan_edits
from ..textio import join_paragraphs, split_paragraphs
from ..transforms import CompiledRuleset, Document, find_matches
from .htmlpage import serialize, tokenize


def rewrite_blocks(
    blocks: Sequence[str],
    ruleset: CompiledRuleset,
    lexicon: Lexicon,
    budget: Budget,
) -> tuple[list[str], int]:
    """Rewritten blocks plus the number of edits actually applied."""
    document = Document.from_blocks(blocks)
    candidates = find_matches(ruleset, document, lexicon)
    plan = plan_edits(candidates, budget)
    if not plan.selected:
        return list(blocks), 0
    rewritten = apply_plan(document, plan)
    return list(rewritten.blocks), len(plan.selected)


def rewrite_html_counted(
    html: str, ruleset: CompiledRuleset, lexicon: Lexicon, budget: Budget
) -> tuple[str, int]:
    tokens = tokenize(html)
    slots = [
        index
        for index, token in enumerate(tokens)
        if token.kind == "text" and token.eligible and token.raw.strip()
    ]
    if not slots:
        return html, 0
    blocks, applied = rewrite_blocks(
        [tokens[index].raw for index in slots], ruleset, lexicon, budget
    )
    if applied == 0:
        return html, 0
    out = list(tokens)
    for slot, text in zip(slots, blocks):
        if text != out[slot].raw:
            out[slot] = replace(out[slot], raw=text)
    return serialize(out), applied


def rewrite_html(
    html: str, ruleset: CompiledRuleset, lexicon: Lexicon, budget: Budget
) -> str:
    """Rewrite visible text in place; markup and ineligible content survive."""
    return rewrite_html_counted(html, ruleset, lexicon, budget)[0]


def rewrite_plaintext(
    text: str, ruleset: CompiledRuleset, lexicon: Lexicon, budget: Budget
) -> tuple[str, int]:
    blocks, separators = split_paragraphs(text)
    rewritten, applied = rewrite_blocks(blocks, ruleset, lexicon, budget)
    if applied == 0:
        return text, 0
    return join_paragraphs(rewritten, separators), applied
