"""In-flight page rewriting: tokenizer, rewrite pipeline, HTTP proxy."""

from .htmlpage import Token, serialize, structure, tokenize
from .rewrite import (
    rewrite_blocks,
    rewrite_html,
    rewrite_html_counted,
    rewrite_plaintext,
)
from .server import (
    DEFAULT_CONTENT_TYPES,
    DEFAULT_MAX_BODY_BYTES,
    ProxyConfig,
    ProxyServer,
    RewriteOutcome,
    build_server,
    load_config,
    serve,
)

__all__ = [
    "DEFAULT_CONTENT_TYPES",
    "DEFAULT_MAX_BODY_BYTES",
    "ProxyConfig",
    "ProxyServer",
    "RewriteOutcome",
    "Token",
    "build_server",
    "load_config",
    "rewrite_blocks",
    "rewrite_html",
    "rewrite_html_counted",
    "rewrite_plaintext",
    "serialize",
    "serve",
    "structure",
    "tokenize",
]
