"""Byte-faithful tolerant HTML tokenization.

The tokenizer never fails and never normalizes: serialization is plain
concatenation of token raws, so any input round-trips exactly.  The
rewrite layer swaps the raw content of eligible text tokens and leaves
every other byte alone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_VOID = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)
# Content of these elements is raw character data; it is captured as a
# single "raw" token and never rewritten.
_RAWTEXT = frozenset({"script", "style", "textarea", "title"})

_NAME_RE = re.compile(r"<(/?)([a-zA-Z][a-zA-Z0-9:._-]*)")


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # text | start | end | comment | decl | pi | cdata | raw
    raw: str
    name: str = ""
    eligible: bool = False


def _tag_end(html: str, pos: int) -> tuple[int, bool]:
    """Index one past the closing '>' (quote-aware) and a self-closing flag."""
    quote = ""
    i = pos
    n = len(html)
    while i < n:
        c = html[i]
        if quote:
            if c == quote:
                quote = ""
        elif c in "\"'":
            quote = c
        elif c == ">":
            return i + 1, html[i - 1] == "/"
        i += 1
    # Unterminated tag: swallow the rest verbatim.
    return n, False


def _rawtext_end(html: str, pos: int, name: str) -> int:
    m = re.compile(rf"</{name}(?=[\s/>]|\Z)", re.IGNORECASE).search(html, pos)
    return m.start() if m else len(html)


def tokenize(html: str) -> list[Token]:
    """Split markup into tokens whose raws concatenate back to the input.

    Text tokens are eligible for rewriting unless they sit inside an open
    head element; script/style/textarea/title content comes back as "raw"
    tokens, which are never eligible.  Documents without explicit
    html/head/body wrappers are treated as body content.
    """
    tokens: list[Token] = []
    stack: list[str] = []
    i = 0
    n = len(html)

    def emit_text(raw: str) -> None:
        tokens.append(Token("text", raw, eligible="head" not in stack))

    while i < n:
        lt = html.find("<", i)
        if lt == -1:
            emit_text(html[i:])
            break
        if lt > i:
            emit_text(html[i:lt])
        if html.startswith("<!--", lt):
            end = html.find("-->", lt + 4)
            stop = n if end == -1 else end + 3
            tokens.append(Token("comment", html[lt:stop]))
            i = stop
            continue
        if html.startswith("<![CDATA[", lt):
            end = html.find("]]>", lt + 9)
            stop = n if end == -1 else end + 3
            tokens.append(Token("cdata", html[lt:stop]))
            i = stop
            continue
        if html.startswith("<!", lt) or html.startswith("<?", lt):
            end = html.find(">", lt)
            stop = n if end == -1 else end + 1
            kind = "decl" if html[lt + 1] == "!" else "pi"
            tokens.append(Token(kind, html[lt:stop]))
            i = stop
            continue
        m = _NAME_RE.match(html, lt)
        if not m:
            # A lone "<" that opens no construct is ordinary text.
            emit_text(html[lt : lt + 1])
            i = lt + 1
            continue
        name = m.group(2).lower()
        closing = m.group(1) == "/"
        stop, self_closing = _tag_end(html, m.end())
        tokens.append(Token("end" if closing else "start", html[lt:stop], name=name))
        i = stop
        if closing:
            if name in stack:
                while stack and stack.pop() != name:
                    pass
            continue
        if name == "body":
            # Tolerate a missing </head>.
            while stack and stack[-1] == "head":
                stack.pop()
        if self_closing or name in _VOID:
            continue
        if name in _RAWTEXT:
            raw_stop = _rawtext_end(html, i, name)
            if raw_stop > i:
                tokens.append(Token("raw", html[i:raw_stop], name=name))
            i = raw_stop
            continue
        stack.append(name)
    return tokens


def serialize(tokens: list[Token]) -> str:
    return "".join(token.raw for token in tokens)


def structure(tokens: list[Token]) -> list[tuple[str, str]]:
    """Everything except text content; equal structures mean equal markup."""
    return [(t.kind, t.raw) for t in tokens if t.kind != "text"]
