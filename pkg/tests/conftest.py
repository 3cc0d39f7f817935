"""Shared fixtures and reference oracles.

The oracles here are deliberately naive: exhaustive subset search for the
planner and a quadratic LCS table for the differ.  Tests compare the real
implementations against these, never the other way round.
"""

from __future__ import annotations

import itertools
from pathlib import Path

import pytest

from atd.planner import Budget
from atd.transforms import EditCandidate, Span

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "atd" / "data"


def make_candidate(
    block: int = 0,
    start: int = 0,
    length: int = 0,
    replacement: str = "x",
    rule_id: str = "r",
    delta: float = -0.5,
    cost: int | None = None,
) -> EditCandidate:
    if cost is None:
        cost = len(replacement) + length
    return EditCandidate(
        block_index=block,
        span=Span(start, length),
        replacement=replacement,
        rule_id=rule_id,
        delta_valence=delta,
        cost_chars=cost,
    )


def _subset_feasible(subset: tuple[EditCandidate, ...], budget: Budget) -> bool:
    if sum(c.cost_chars for c in subset) > budget.max_chars:
        return False
    per_block: dict[int, list[EditCandidate]] = {}
    for c in subset:
        per_block.setdefault(c.block_index, []).append(c)
    for edits in per_block.values():
        edits.sort(key=lambda c: (c.span.start, c.span.end))
        for a, b in zip(edits, edits[1:]):
            if a.span.end > b.span.start or a.span.start == b.span.start:
                return False
    return True


def brute_force_best(
    candidates: list[EditCandidate], budget: Budget
) -> tuple[float, int]:
    """(max objective, min cost among maximizers) by exhaustive subset search."""
    best_objective = 0.0
    best_cost = 0
    for size in range(len(candidates) + 1):
        for subset in itertools.combinations(candidates, size):
            if any(budget.direction * c.delta_valence <= 0 for c in subset):
                continue
            if not _subset_feasible(subset, budget):
                continue
            objective = budget.direction * sum(c.delta_valence for c in subset)
            cost = sum(c.cost_chars for c in subset)
            if objective > best_objective or (
                objective == best_objective and cost < best_cost
            ):
                best_objective = objective
                best_cost = cost
    return best_objective, best_cost


def brute_force_best_fast(
    candidates: list[EditCandidate], budget: Budget
) -> tuple[float, int]:
    """Bitmask variant of brute_force_best for larger instances.

    Still exhaustive over all 2^n subsets; feasibility of a mask reuses the
    already-checked rest of the mask plus pairwise conflict bits.
    """
    n = len(candidates)
    conflict = [0] * n
    for i, a in enumerate(candidates):
        for j, b in enumerate(candidates):
            if i == j or a.block_index != b.block_index:
                continue
            lo, hi = (a, b) if (a.span.start, a.span.end) <= (b.span.start, b.span.end) else (b, a)
            if lo.span.end > hi.span.start or lo.span.start == hi.span.start:
                conflict[i] |= 1 << j
    usable = ~0
    for i, c in enumerate(candidates):
        if budget.direction * c.delta_valence <= 0:
            usable &= ~(1 << i)
    feasible = [False] * (1 << n)
    cost = [0] * (1 << n)
    value = [0.0] * (1 << n)
    feasible[0] = True
    best_objective, best_cost = 0.0, 0
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        if not feasible[rest] or not (usable >> low) & 1 or conflict[low] & rest:
            continue
        total = cost[rest] + candidates[low].cost_chars
        if total > budget.max_chars:
            continue
        feasible[mask] = True
        cost[mask] = total
        value[mask] = value[rest] + budget.direction * candidates[low].delta_valence
        if value[mask] > best_objective or (
            value[mask] == best_objective and total < best_cost
        ):
            best_objective, best_cost = value[mask], total
    return best_objective, best_cost


def random_instance(rng, count: int) -> list[EditCandidate]:
    """A planner test instance; deltas are dyadic so float sums are exact."""
    out = []
    for i in range(count):
        length = rng.randint(0, 8)
        delta = rng.randint(-16, 16) / 16.0
        out.append(
            EditCandidate(
                block_index=rng.randint(0, 2),
                span=Span(rng.randint(0, 40), length),
                replacement="x" * rng.randint(0, 5),
                rule_id=f"r{i}",
                delta_valence=delta,
                cost_chars=rng.randint(1, 25),
            )
        )
    return out


def lcs_length(a: list[str], b: list[str]) -> int:
    """Textbook quadratic LCS table; the diff minimality reference."""
    rows = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                rows[i][j] = rows[i - 1][j - 1] + 1
            else:
                rows[i][j] = max(rows[i - 1][j], rows[i][j - 1])
    return rows[len(a)][len(b)]


@pytest.fixture(scope="session")
def demo_lexicon_bytes() -> bytes:
    return (DATA_DIR / "lexicon.tsv").read_bytes()


@pytest.fixture(scope="session")
def demo_ruleset_bytes() -> bytes:
    return (DATA_DIR / "ruleset.json").read_bytes()
