"""Paired-term swapping with case preservation."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from .model import Span
from .wordmatch import compile_terms


def _recase(matched: str, replacement: str) -> str:
    # ALL-CAPS and Title-case sources keep their shape; anything else gets
    # the replacement exactly as written in the pair list.
    if len(matched) > 1 and matched.isupper():
        return replacement.upper()
    if matched[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


def _her_object_or_possessive(text: str, end: int) -> str:
    """Pick "his" before a letter-initial token, "him" everywhere else."""
    i = end
    while i < len(text) and text[i].isspace():
        i += 1
    if i > end and i < len(text) and text[i].isalpha():
        return "his"
    return "him"


# Built once per distinct pair list; rules carry their pairs as tuples, so
# the hot path is a single cache hit per block.
@lru_cache(maxsize=256)
def _swap_state(
    pairs: tuple[tuple[str, str], ...]
) -> tuple[dict[str, str], re.Pattern[str] | None]:
    mapping = {left.casefold(): right for left, right in pairs}
    return mapping, (compile_terms(tuple(mapping)) if mapping else None)


def _normalized_pairs(
    pairs: Iterable[Sequence[str]],
) -> tuple[tuple[str, str], ...]:
    if isinstance(pairs, tuple) and all(type(p) is tuple for p in pairs):
        return pairs
    return tuple((left, right) for left, right in pairs)


def swap_matches(
    text: str, pairs: Iterable[Sequence[str]]
) -> list[tuple[Span, str]]:
    """(span, cased replacement) for every whole-word left-term occurrence.

    One left-to-right scan; the longest left term wins at each position and
    replacements are never rescanned.  A her->his pair is disambiguated by
    what follows: possessive "her" (before a word) becomes "his", the
    object form becomes "him".
    """
    mapping, matcher = _swap_state(_normalized_pairs(pairs))
    if matcher is None:
        return []
    out = []
    for m in matcher.finditer(text):
        matched = m.group(0)
        replacement = mapping[matched.casefold()]
        if matched.casefold() == "her" and replacement.casefold() == "his":
            replacement = _her_object_or_possessive(text, m.end())
        replacement = _recase(matched, replacement)
        if replacement != matched:
            out.append((Span(m.start(), m.end() - m.start()), replacement))
    return out


def swap_terms(text: str, pairs: Iterable[Sequence[str]]) -> str:
    """Replace every left-hand term with its right-hand partner."""
    pieces = []
    last = 0
    for span, replacement in swap_matches(text, pairs):
        pieces.append(text[last : span.start])
        pieces.append(replacement)
        last = span.end
    pieces.append(text[last:])
    return "".join(pieces)
