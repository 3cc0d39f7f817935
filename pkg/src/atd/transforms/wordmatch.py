"""Whole-word matching shared by the term-driven transforms."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable

# A word boundary here means "not flanked by a letter"; digits and
# punctuation terminate words the same way the lexicon tokenizer does.
LETTER = r"[^\W\d_]"


# Applying one ruleset across hundreds of blocks must not recompile or even
# re-sort the same alternation per block; the cache is keyed on the raw term
# tuple so the per-block cost is one hash lookup.
@lru_cache(maxsize=512)
def _compiled(terms: tuple[str, ...]) -> re.Pattern[str]:
    ordered = sorted(set(terms), key=lambda t: (-len(t), t))
    if not ordered:
        raise ValueError("no terms to match")
    alternatives = "|".join(re.escape(term) for term in ordered)
    return re.compile(
        rf"(?<!{LETTER})(?:{alternatives})(?!{LETTER})", re.IGNORECASE
    )


def compile_terms(terms: Iterable[str]) -> re.Pattern[str]:
    """Case-insensitive whole-word matcher preferring the longest alternative.

    Terms may contain internal spaces or apostrophes ("Elon Musk"); they are
    matched literally apart from case.
    """
    if not isinstance(terms, tuple):
        terms = tuple(terms)
    return _compiled(terms)


def contains_term(text: str, terms: Iterable[str]) -> bool:
    terms = list(terms)
    if not terms:
        return False
    return compile_terms(terms).search(text) is not None
