"""Plain-text block handling.

Plain documents are split into paragraph blocks on blank-line runs.  The
separators are kept so untouched documents reassemble byte for byte.
"""

from __future__ import annotations

import re
from typing import Sequence

_SEPARATOR_RE = re.compile(r"(\n[ \t]*\n(?:[ \t]*\n)*)")


def split_paragraphs(text: str) -> tuple[list[str], list[str]]:
    """Return (blocks, separators) with text == interleaved concatenation."""
    parts = _SEPARATOR_RE.split(text)
    return parts[0::2], parts[1::2]


def join_paragraphs(blocks: Sequence[str | None], separators: Sequence[str]) -> str:
    """Reassemble, skipping blocks that were dropped (None).

    Each surviving block after the first emitted keeps the separator that
    immediately preceded it, so removals never leave dangling blank lines.
    """
    pieces: list[str] = []
    for index, block in enumerate(blocks):
        if block is None:
            continue
        if pieces and index > 0:
            pieces.append(separators[index - 1])
        pieces.append(block)
    return "".join(pieces)
