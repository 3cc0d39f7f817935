"""Block filtering, term deletion, and engagement-metric stripping."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable

from .model import Document, Span
from .wordmatch import LETTER, compile_terms, contains_term

# An integer with optional thousands separators, optionally suffixed k/M.
_NUMBER = r"(?:\d{1,3}(?:,\d{3})+|\d+)[kKmM]?"


@lru_cache(maxsize=128)
def _metric_pattern(nouns: tuple[str, ...]) -> re.Pattern[str]:
    alternatives = "|".join(re.escape(noun) for noun in nouns)
    return re.compile(
        rf"(?<!\w){_NUMBER} (?=(?:{alternatives})(?!{LETTER}))", re.IGNORECASE
    )


def filter_blocks(doc: Document, terms: Iterable[str]) -> Document:
    """Drop every block containing any term (case-insensitive, whole-word)."""
    terms = list(terms)
    if not terms:
        return doc
    kept = tuple(block for block in doc.blocks if not contains_term(block, terms))
    return Document(kept, doc.metadata)


def delete_spans(text: str, terms: Iterable[str]) -> list[Span]:
    """Spans that remove each term occurrence plus one adjacent space.

    The following space is preferred; a preceding one is taken at end of
    text so deletions do not leave doubled separators.  Spans may touch
    when terms are adjacent; merge before applying directly.
    """
    spans = []
    for m in compile_terms(terms).finditer(text):
        start, end = m.span()
        if end < len(text) and text[end] == " ":
            end += 1
        elif start > 0 and text[start - 1] == " ":
            start -= 1
        spans.append(Span(start, end - start))
    return spans


def _merge_spans(spans: list[Span]) -> list[Span]:
    merged: list[Span] = []
    for span in sorted(spans):
        if merged and span.start <= merged[-1].end:
            last = merged[-1]
            merged[-1] = Span(last.start, max(last.end, span.end) - last.start)
        else:
            merged.append(span)
    return merged


def delete_terms(text: str, terms: Iterable[str]) -> str:
    """Remove every whole-word occurrence of the terms."""
    terms = list(terms)
    if not terms:
        return text
    pieces = []
    last = 0
    for span in _merge_spans(delete_spans(text, terms)):
        pieces.append(text[last : span.start])
        last = span.end
    pieces.append(text[last:])
    return "".join(pieces)


def metric_spans(text: str, metric_nouns: Iterable[str]) -> list[Span]:
    """Spans covering a count (plus one space) directly before a metric noun."""
    nouns = tuple(sorted(set(metric_nouns), key=lambda n: (-len(n), n)))
    if not nouns:
        return []
    pattern = _metric_pattern(nouns)
    return [Span(m.start(), m.end() - m.start()) for m in pattern.finditer(text)]


def strip_metrics(text: str, metric_nouns: Iterable[str]) -> str:
    """Remove engagement counts before metric nouns: "12 likes" -> "likes"."""
    pieces = []
    last = 0
    for span in metric_spans(text, metric_nouns):
        pieces.append(text[last : span.start])
        last = span.end
    pieces.append(text[last:])
    return "".join(pieces)
