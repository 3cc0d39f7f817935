"""Budgeted edit selection.

Given candidate edits with valence deltas and character costs, pick the
subset that shifts affect furthest in the requested direction while
spending at most ``max_chars`` characters and never letting two selected
spans overlap inside a block.  Small edits that stay under a budget are
what keeps the rewrite unobtrusive.

The optimum is exact: a weighted-interval-scheduling recurrence over the
candidates of each block, crossed with a knapsack over the discrete
budget.  Table size is O(candidates x max_chars), fine at document scale.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Any, Sequence

from .transforms.model import Document, EditCandidate, Span
from .transforms.engine import apply_edits


@dataclass(frozen=True, slots=True)
class Budget:
    max_chars: int
    direction: int

    def __post_init__(self) -> None:
        if self.max_chars < 0:
            raise ValueError("max_chars must be >= 0")
        if self.direction not in (-1, 1):
            raise ValueError("direction must be -1 or +1")


@dataclass(frozen=True, slots=True)
class TransformPlan:
    selected: tuple[EditCandidate, ...]
    total_delta: float
    total_cost: int


def _conflict_free_prefix(keys: list[tuple[int, int]], span: Span) -> int:
    """Index below which every same-block candidate is compatible with *span*.

    keys holds (end, start) per candidate, ascending.  A predecessor is
    compatible iff it ends before span.start, or ends exactly there having
    started earlier (two zero-length insertions at one offset conflict).
    That is exactly the set of keys lexicographically below
    (span.start, span.start).
    """
    return bisect_left(keys, (span.start, span.start))


def plan_edits(
    candidates: Sequence[EditCandidate], budget: Budget
) -> TransformPlan:
    """Select the exact-optimal candidate subset under *budget*.

    Maximizes direction x sum(delta_valence); candidates pulling against
    the direction (or with zero delta) are never selected.  Ties prefer the
    smaller total cost, then the lexicographically earliest span set, with
    input order breaking exact span ties (for engine-produced candidates
    that is rule declaration order).
    """
    for candidate in candidates:
        if candidate.cost_chars < 1:
            raise ValueError("every candidate must have cost_chars >= 1")
    usable = [
        (index, candidate)
        for index, candidate in enumerate(candidates)
        if budget.direction * candidate.delta_valence > 0
        and candidate.cost_chars <= budget.max_chars
    ]
    if not usable:
        return TransformPlan(selected=(), total_delta=0.0, total_cost=0)

    # Scheduling order: block-major, then span end.  Tie-break order: the
    # plan's "earliest span set" comparison, as ranks so DP cells hold
    # cheap integer tuples.
    schedule = sorted(
        range(len(usable)),
        key=lambda u: (
            usable[u][1].block_index,
            usable[u][1].span.end,
            usable[u][1].span.start,
            usable[u][0],
        ),
    )
    lex_order = sorted(
        range(len(usable)),
        key=lambda u: (
            usable[u][1].block_index,
            usable[u][1].span.start,
            usable[u][1].span.end,
            usable[u][0],
        ),
    )
    rank = [0] * len(usable)
    for r, u in enumerate(lex_order):
        rank[u] = r

    # prefix[i]: how many scheduled predecessors of scheduled item i are
    # guaranteed compatible with it (everything in earlier blocks plus the
    # conflict-free prefix inside its own block).
    prefix = [0] * len(schedule)
    block_start = 0
    position = 0
    while position < len(schedule):
        block = usable[schedule[position]][1].block_index
        keys: list[tuple[int, int]] = []
        scan = position
        while scan < len(schedule) and usable[schedule[scan]][1].block_index == block:
            span = usable[schedule[scan]][1].span
            prefix[scan] = block_start + _conflict_free_prefix(keys, span)
            keys.append((span.end, span.start))
            scan += 1
        block_start = scan
        position = scan

    max_chars = budget.max_chars
    # One DP row per scheduled prefix; cells are (value, cost, selection).
    empty_cell = (0.0, 0, ())
    rows: list[list[tuple[float, int, tuple[int, ...]]]] = [
        [empty_cell] * (max_chars + 1)
    ]
    for i, u in enumerate(schedule):
        _, candidate = usable[u]
        value = budget.direction * candidate.delta_valence
        cost = candidate.cost_chars
        r = rank[u]
        skip_row = rows[i]
        base_row = rows[prefix[i]]
        row: list[tuple[float, int, tuple[int, ...]]] = []
        for spend in range(max_chars + 1):
            best = skip_row[spend]
            if cost <= spend:
                base_value, base_cost, base_sel = base_row[spend - cost]
                take_value = base_value + value
                take_cost = base_cost + cost
                if take_value > best[0] or (
                    take_value == best[0] and take_cost <= best[1]
                ):
                    take_sel = tuple(sorted(base_sel + (r,)))
                    if (
                        take_value > best[0]
                        or take_cost < best[1]
                        or take_sel < best[2]
                    ):
                        best = (take_value, take_cost, take_sel)
            row.append(best)
        rows.append(row)

    _, total_cost, selection = rows[-1][max_chars]
    chosen = [usable[lex_order[r]][1] for r in selection]
    total_delta = math.fsum(c.delta_valence for c in chosen)
    return TransformPlan(
        selected=tuple(chosen), total_delta=total_delta, total_cost=total_cost
    )


def apply_plan(doc: Document, plan: TransformPlan) -> Document:
    """Apply a plan produced from this document's candidates."""
    return apply_edits(doc, plan.selected)


def plan_to_dict(plan: TransformPlan) -> dict[str, Any]:
    return {
        "selected": [
            {
                "block": c.block_index,
                "start": c.span.start,
                "len": c.span.length,
                "replacement": c.replacement,
                "rule_id": c.rule_id,
                "delta": c.delta_valence,
                "cost": c.cost_chars,
            }
            for c in plan.selected
        ],
        "total_delta": plan.total_delta,
        "total_cost": plan.total_cost,
    }


def serialize_plan(plan: TransformPlan) -> str:
    return json.dumps(plan_to_dict(plan), ensure_ascii=False, indent=2) + "\n"


def plan_from_dict(document: dict[str, Any]) -> TransformPlan:
    selected = tuple(
        EditCandidate(
            block_index=entry["block"],
            span=Span(entry["start"], entry["len"]),
            replacement=entry["replacement"],
            rule_id=entry["rule_id"],
            delta_valence=entry["delta"],
            cost_chars=entry["cost"],
        )
        for entry in document["selected"]
    )
    return TransformPlan(
        selected=selected,
        total_delta=document["total_delta"],
        total_cost=document["total_cost"],
    )


def parse_plan(data: bytes | str) -> TransformPlan:
    return plan_from_dict(json.loads(data))
