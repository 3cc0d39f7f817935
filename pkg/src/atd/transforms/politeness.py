"""Directive detection and politeness rewriting for request sentences."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable

from .model import Span

DEFAULT_PREAMBLE = "I understand that you are extremely busy these days"
DEFAULT_THREAT = "Unless you want to lose points"

# Verbs accepted at the head of an imperative request.  Small and editable;
# detect_directive takes any word list.
DEFAULT_IMPERATIVE_VERBS = frozenset(
    {
        "answer",
        "call",
        "check",
        "complete",
        "confirm",
        "deliver",
        "finish",
        "fix",
        "forward",
        "prepare",
        "read",
        "reply",
        "review",
        "schedule",
        "send",
        "share",
        "sign",
        "submit",
        "update",
        "write",
    }
)

_TERMINATORS = ".!?"

_MODAL_RE = re.compile(r"^(?:can|could|will|would)\s+you\s+(.+)$", re.IGNORECASE | re.DOTALL)
_IMPERATIVE_RE = re.compile(r"^(?:please,?\s+)?([^\W\d_]+)", re.IGNORECASE)


def _lower_first(text: str) -> str:
    return text[:1].lower() + text[1:]


# Folding the verb list dominates per-sentence cost when scanning large
# documents; frozensets memoize their hash, so the cache lookup is cheap.
@lru_cache(maxsize=64)
def _folded_verbs(verbs: frozenset[str]) -> frozenset[str]:
    return frozenset(verb.casefold() for verb in verbs)


def detect_directive(
    sentence: str, imperative_verbs: Iterable[str] = DEFAULT_IMPERATIVE_VERBS
) -> str | None:
    """Extract the request body from a directive sentence, or None.

    Two shapes count as directives: an imperative opening with an optional
    "please" plus a known verb ("Complete the budget report."), and a modal
    request ("Can you complete the budget report?").  The body keeps the
    verb, drops the trailing terminator, and starts lowercase.
    """
    if not isinstance(imperative_verbs, frozenset):
        imperative_verbs = frozenset(imperative_verbs)
    verbs = _folded_verbs(imperative_verbs)
    s = sentence.strip()
    while s and s[-1] in _TERMINATORS:
        s = s[:-1]
    s = s.rstrip()
    if not s:
        return None
    modal = _MODAL_RE.match(s)
    if modal:
        body = modal.group(1).strip()
        return _lower_first(body) if body else None
    imperative = _IMPERATIVE_RE.match(s)
    if imperative and imperative.group(1).casefold() in verbs:
        return _lower_first(s[imperative.start(1) :])
    return None


def rewrite_directive(
    body: str,
    mode: str,
    *,
    preamble: str | None = None,
    threat: str | None = None,
) -> str:
    """Recast a directive body in the requested tone."""
    if not body:
        raise ValueError("directive body must be non-empty")
    if mode == "supportive":
        lead = preamble if preamble is not None else DEFAULT_PREAMBLE
        return f"{lead}, but can you {body}?"
    if mode == "downgrader":
        return f"Would it be ok for you to possibly {body}?"
    if mode == "aggravating":
        lead = threat if threat is not None else DEFAULT_THREAT
        return f"{lead}, can you {body}?"
    raise ValueError(f"unknown politeness mode: {mode!r}")


# First non-space character through the end of the terminator run.
_SENTENCE_RE = re.compile(r"\S[^.!?]*[.!?]*")


def sentence_spans(text: str) -> list[Span]:
    """Spans of sentence-shaped chunks.

    A sentence runs up to and including its terminator run (.!?), excluding
    leading whitespace.  Deliberately naive about abbreviations; request
    sentences in email bodies rarely contain them.
    """
    return [
        Span(m.start(), m.end() - m.start()) for m in _SENTENCE_RE.finditer(text)
    ]


def directive_rewrites(
    text: str,
    mode: str,
    *,
    preamble: str | None = None,
    threat: str | None = None,
    imperative_verbs: Iterable[str] = DEFAULT_IMPERATIVE_VERBS,
) -> list[tuple[Span, str]]:
    """(sentence span, rewritten sentence) for each directive in *text*."""
    out = []
    for span in sentence_spans(text):
        body = detect_directive(text[span.start : span.end], imperative_verbs)
        if body is not None:
            out.append((span, rewrite_directive(body, mode, preamble=preamble, threat=threat)))
    return out
