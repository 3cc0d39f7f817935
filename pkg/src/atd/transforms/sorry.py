"""First-person statement detection and apology insertion."""

from __future__ import annotations

import re

from .model import Span

# A first-person trigger is "I" plus a space at the very start of the text,
# or "I" plus one of the contractions 'd/'ll/'m/'ve anywhere.  Mid-text only
# the contraction forms count; a bare "I" inside a sentence is left alone.
_START_RE = re.compile(r"^I(?:\s|'(?:d|ll|m|ve)\b)", re.IGNORECASE)
_MID_RE = re.compile(r"(?<=\s)I'(?:d|ll|m|ve)\b", re.IGNORECASE)

START_INSERT = "Sorry, "
MID_INSERT = "sorry, "


def detect_i_statements(text: str) -> list[Span]:
    """Spans of first-person tokens an apology could attach to.

    Each span covers the "I" and its contraction (never the surrounding
    whitespace); spans come back ordered and non-overlapping.
    """
    spans: list[Span] = []
    head = _START_RE.match(text)
    if head:
        token = head.group(0)
        spans.append(Span(0, 1 if token[1].isspace() else len(token)))
    for m in _MID_RE.finditer(text):
        spans.append(Span(m.start(), m.end() - m.start()))
    return spans


def _apology_precedes(text: str, pos: int) -> bool:
    """True when the nearest word left of *pos* is "sorry" in any casing."""
    i = pos
    while i > 0 and not text[i - 1].isalpha():
        i -= 1
    j = i
    while j > 0 and text[j - 1].isalpha():
        j -= 1
    return text[j:i].casefold() == "sorry"


def apology_insertions(text: str) -> list[tuple[int, str]]:
    """(offset, inserted text) pairs insert_sorry would apply, in order."""
    inserts = []
    for span in detect_i_statements(text):
        if _apology_precedes(text, span.start):
            continue
        lead = START_INSERT if span.start == 0 else MID_INSERT
        inserts.append((span.start, lead))
    return inserts


def insert_sorry(text: str) -> str:
    """Prefix first-person statements with an apology.

    "I am looking for help" becomes "Sorry, I am looking for help"; mid-text
    contractions get a lowercase "sorry, ".  Re-application changes nothing:
    a match whose nearest preceding word is already "sorry" is skipped.
    """
    pieces = []
    last = 0
    for pos, lead in apology_insertions(text):
        pieces.append(text[last:pos])
        pieces.append(lead)
        last = pos
    pieces.append(text[last:])
    return "".join(pieces)
