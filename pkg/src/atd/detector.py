"""Integrity checking of rendered text against a trusted source snapshot.

Both snapshots are canonicalized (NFC, whitespace collapsed, trimmed) and
hashed; differing texts are diffed at word level with a minimal edit
script, and each edit can be classified by replaying single rules from a
known ruleset over the source.
"""

from __future__ import annotations

import hashlib
import json
import unicodedata
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

from .transforms.engine import apply_rule_to_text
from .transforms.model import CompiledRuleset


@dataclass(frozen=True, slots=True)
class CanonicalText:
    text: str
    digest: str

    @property
    def words(self) -> list[str]:
        return self.text.split()


def canonicalize(text: str) -> CanonicalText:
    """NFC-normalize, collapse whitespace runs, trim, and digest."""
    normalized = unicodedata.normalize("NFC", text)
    canonical = " ".join(normalized.split())
    digest = hashlib.sha256(canonical.encode("utf-8")).hexdigest()
    return CanonicalText(text=canonical, digest=digest)


@dataclass(frozen=True, slots=True)
class Edit:
    """One contiguous word-level change.

    Spans are half-open word-index ranges; an insert has an empty source
    span and a delete an empty rendered span.
    """

    type: str
    source_span: tuple[int, int]
    rendered_span: tuple[int, int]
    source_text: str
    rendered_text: str


class RuleMatch(NamedTuple):
    kind: str
    rule_id: str


@dataclass(frozen=True, slots=True)
class IntegrityReport:
    source_digest: str
    rendered_digest: str
    edits: tuple[Edit, ...]
    classifications: tuple[RuleMatch | None, ...]


def _myers_matches(a: Sequence[str], b: Sequence[str]) -> list[tuple[int, int]]:
    """Matched index pairs of a minimal edit script (Myers' greedy diff)."""
    n, m = len(a), len(b)
    v = {1: 0}
    trace = []
    depth = None
    for d in range(n + m + 1):
        trace.append(dict(v))
        for k in range(-d, d + 1, 2):
            if k == -d or (k != d and v.get(k - 1, -1) < v.get(k + 1, -1)):
                x = v[k + 1]
            else:
                x = v[k - 1] + 1
            y = x - k
            while x < n and y < m and a[x] == b[y]:
                x += 1
                y += 1
            v[k] = x
            if x >= n and y >= m:
                depth = d
                break
        if depth is not None:
            break
    assert depth is not None

    matches = []
    x, y = n, m
    for d in range(depth, -1, -1):
        state = trace[d]
        k = x - y
        if k == -d or (k != d and state.get(k - 1, -1) < state.get(k + 1, -1)):
            prev_k = k + 1
        else:
            prev_k = k - 1
        prev_x = state[prev_k] if d > 0 else 0
        prev_y = prev_x - prev_k if d > 0 else 0
        while x > prev_x and y > prev_y:
            x -= 1
            y -= 1
            matches.append((x, y))
        if d > 0:
            x, y = prev_x, prev_y
    matches.reverse()
    return matches


def _diff_words(a: list[str], b: list[str]) -> list[Edit]:
    # Trimming the common affixes keeps the O(ND) core small; an optimal
    # indel script can always match a shared prefix and suffix.
    n, m = len(a), len(b)
    pre = 0
    while pre < n and pre < m and a[pre] == b[pre]:
        pre += 1
    suf = 0
    while suf < n - pre and suf < m - pre and a[n - 1 - suf] == b[m - 1 - suf]:
        suf += 1
    core_matches = _myers_matches(a[pre : n - suf], b[pre : m - suf])
    matches = (
        [(i, i) for i in range(pre)]
        + [(x + pre, y + pre) for x, y in core_matches]
        + [(n - suf + i, m - suf + i) for i in range(suf)]
    )

    edits = []
    ai = bi = 0
    for ax, bx in matches + [(n, m)]:
        if ai < ax or bi < bx:
            if ai == ax:
                kind = "insert"
            elif bi == bx:
                kind = "delete"
            else:
                kind = "replace"
            edits.append(
                Edit(
                    type=kind,
                    source_span=(ai, ax),
                    rendered_span=(bi, bx),
                    source_text=" ".join(a[ai:ax]),
                    rendered_text=" ".join(b[bi:bx]),
                )
            )
        ai, bi = ax + 1, bx + 1
    return edits


def diff_texts(source: CanonicalText, rendered: CanonicalText) -> list[Edit]:
    """Minimal word-level edit script turning *source* into *rendered*.

    Adjacent changed words merge into one Edit; a deletion butting an
    insertion becomes a replace.
    """
    return _diff_words(source.words, rendered.words)


def reconstruct(source: CanonicalText, edits: Sequence[Edit]) -> str:
    """Apply an edit script to the source words; sanity check for reports."""
    words = source.words
    out: list[str] = []
    cursor = 0
    for edit in edits:
        start, end = edit.source_span
        out.extend(words[cursor:start])
        if edit.rendered_text:
            out.append(edit.rendered_text)
        cursor = end
    out.extend(words[cursor:])
    return " ".join(out)


def _edit_signature(edit: Edit) -> tuple[str, tuple[int, int], str, str]:
    # rendered_span is excluded: other edits shift rendered offsets.
    return (edit.type, edit.source_span, edit.source_text, edit.rendered_text)


def classify_edits(
    edits: Sequence[Edit], ruleset: CompiledRuleset, source: CanonicalText
) -> list[RuleMatch | None]:
    """Attribute each edit to the first rule whose lone replay reproduces it.

    Replay applies a single rule to the whole canonical source and diffs;
    an edit matches when the replayed script contains an edit with the same
    type, source span, and texts.  Unmatched edits come back None and are
    reported as "unknown".
    """
    classifications: list[RuleMatch | None] = [None] * len(edits)
    pending = set(range(len(edits)))
    for rule in ruleset.rules:
        if not pending:
            break
        replayed = canonicalize(apply_rule_to_text(rule, source.text))
        if replayed.text == source.text:
            continue
        signatures = {_edit_signature(e) for e in _diff_words(source.words, replayed.words)}
        matched = [i for i in pending if _edit_signature(edits[i]) in signatures]
        for i in matched:
            classifications[i] = RuleMatch(kind=rule.kind, rule_id=rule.id)
            pending.discard(i)
    return classifications


def build_report(
    source_text: str,
    rendered_text: str,
    ruleset: CompiledRuleset | None = None,
) -> IntegrityReport:
    source = canonicalize(source_text)
    rendered = canonicalize(rendered_text)
    edits = tuple(diff_texts(source, rendered))
    if ruleset is not None:
        classifications = tuple(classify_edits(edits, ruleset, source))
    else:
        classifications = tuple(None for _ in edits)
    return IntegrityReport(
        source_digest=source.digest,
        rendered_digest=rendered.digest,
        edits=edits,
        classifications=classifications,
    )


def report_to_dict(report: IntegrityReport, *, classified: bool = True) -> dict[str, Any]:
    """Report JSON shape; classified_as is the matched rule kind or null."""
    edits = []
    for edit, match in zip(report.edits, report.classifications):
        if not classified:
            classified_as = None
        else:
            classified_as = match.kind if match is not None else "unknown"
        edits.append(
            {
                "type": edit.type,
                "source_span": list(edit.source_span),
                "rendered_span": list(edit.rendered_span),
                "source_text": edit.source_text,
                "rendered_text": edit.rendered_text,
                "classified_as": classified_as,
            }
        )
    return {
        "source_digest": report.source_digest,
        "rendered_digest": report.rendered_digest,
        "edits": edits,
    }


def serialize_report(report: IntegrityReport, *, classified: bool = True) -> str:
    return json.dumps(report_to_dict(report, classified=classified), ensure_ascii=False, indent=2) + "\n"
