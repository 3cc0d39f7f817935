"""Valence lexicons and affect scoring.

A lexicon maps case-folded single-word terms to signed scores in
[-1.0, +1.0].  Scoring a text is a lexicon-lookup sum over its word
tokens.  Negative hits can be amplified through ``negativity_weight``,
reflecting that readers weigh bad news more heavily than good.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import LexiconError

# Tokens are maximal runs of letters with internal apostrophes; digits and
# punctuation never join a token.
_TOKEN_RE = re.compile(r"[^\W\d_]+(?:'[^\W\d_]+)*")


def tokenize(text: str) -> list[str]:
    """Case-folded word tokens of *text*, in order of appearance."""
    return [m.group(0).casefold() for m in _TOKEN_RE.finditer(text)]


@dataclass(frozen=True, slots=True)
class ValenceScore:
    """Affect measurement of one text."""

    raw: float
    normalized: float
    matched_terms: int
    token_count: int


@dataclass(frozen=True, slots=True)
class Lexicon:
    entries: dict[str, float]
    negativity_weight: float = 1.0

    def __post_init__(self) -> None:
        if self.negativity_weight < 1.0:
            raise ValueError("negativity_weight must be >= 1.0")
        for term, score in self.entries.items():
            if not term:
                raise ValueError("empty lexicon term")
            if not -1.0 <= score <= 1.0:
                raise ValueError(f"score out of range for {term!r}: {score}")


def load_lexicon(data: bytes, *, negativity_weight: float = 1.0) -> Lexicon:
    """Parse ``term<TAB>score`` lines into a Lexicon.

    Accepts LF or CRLF line endings; lines whose first non-blank character
    is ``#`` and blank lines are ignored.  Every malformed line is rejected
    with its 1-based line number.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise LexiconError(f"lexicon is not valid UTF-8: {exc}") from None
    entries: dict[str, float] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise LexiconError(
                f"line {lineno}: expected term<TAB>score, got {len(fields)} field(s)"
            )
        term = fields[0].strip().casefold()
        if not _TOKEN_RE.fullmatch(term):
            raise LexiconError(f"line {lineno}: term must be a single word: {fields[0]!r}")
        try:
            score = float(fields[1])
        except ValueError:
            raise LexiconError(f"line {lineno}: not a decimal score: {fields[1]!r}") from None
        if not -1.0 <= score <= 1.0:
            raise LexiconError(f"line {lineno}: score outside [-1, 1]: {score}")
        if term in entries:
            raise LexiconError(f"line {lineno}: duplicate term {term!r}")
        entries[term] = score
    return Lexicon(entries=entries, negativity_weight=negativity_weight)


def score_text(lexicon: Lexicon, text: str) -> ValenceScore:
    """Score *text* against *lexicon*.

    raw sums the scores of matched tokens, scaling negative scores by the
    negativity weight; normalized divides raw by the total token count
    (0.0 for token-free text).
    """
    tokens = tokenize(text)
    matched = 0
    contributions = []
    for token in tokens:
        score = lexicon.entries.get(token)
        if score is None:
            continue
        matched += 1
        if score < 0:
            score *= lexicon.negativity_weight
        contributions.append(score)
    raw = math.fsum(contributions)
    normalized = raw / len(tokens) if tokens else 0.0
    return ValenceScore(
        raw=raw, normalized=normalized, matched_terms=matched, token_count=len(tokens)
    )
