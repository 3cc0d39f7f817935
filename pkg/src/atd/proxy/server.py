"""Rewriting HTTP proxy.

A small threaded reverse proxy: requests are forwarded to the configured
upstream, responses whose media type is enabled for rewriting are buffered,
rewritten under the character budget, and re-framed with a corrected
Content-Length.  Everything else streams through untouched.  Rewriting is
fail-open: any error on the rewrite path downgrades to passthrough.
"""

from __future__ import annotations

import http.client
import json
import sys
import threading
import time
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import IO, NoReturn
from urllib.parse import urlsplit

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from ..errors import ConfigError
from ..lexicon import Lexicon, load_lexicon
from ..planner import Budget
from ..transforms import CompiledRuleset, DocMetadata, parse_ruleset, scope_matches
from .rewrite import rewrite_html_counted, rewrite_plaintext

_HOP_BY_HOP = frozenset(
    {
        "connection",
        "keep-alive",
        "proxy-authenticate",
        "proxy-authorization",
        "te",
        "trailer",
        "trailers",
        "transfer-encoding",
        "upgrade",
    }
)

_REWRITE_CHARSETS = frozenset({"utf-8", "us-ascii", "ascii"})

DEFAULT_CONTENT_TYPES = ("text/html", "text/plain")
DEFAULT_MAX_BODY_BYTES = 4 * 1024 * 1024

_CONFIG_KEYS = frozenset(
    {
        "listen",
        "upstream",
        "ruleset",
        "lexicon",
        "budget_chars",
        "direction",
        "content_types",
        "latency_log",
        "max_body_bytes",
    }
)

_UPSTREAM_TIMEOUT = 30.0


@dataclass(frozen=True, slots=True)
class ProxyConfig:
    listen_host: str
    listen_port: int
    upstream: str
    ruleset_path: Path
    lexicon_path: Path
    budget: Budget
    content_types: tuple[str, ...] = DEFAULT_CONTENT_TYPES
    latency_log_path: Path | None = None
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES


@dataclass(frozen=True, slots=True)
class RewriteOutcome:
    bytes_in: int
    bytes_out: int
    edits_applied: int
    added_latency: float


def _parse_listen(value: object) -> tuple[str, int]:
    if not isinstance(value, str) or ":" not in value:
        raise ConfigError("listen: expected \"host:port\"")
    host, _, port_text = value.rpartition(":")
    try:
        port = int(port_text)
    except ValueError:
        raise ConfigError(f"listen: invalid port {port_text!r}") from None
    if not 0 <= port <= 65535:
        raise ConfigError(f"listen: port {port} out of range")
    return host, port


def _parse_upstream(value: object) -> str:
    if not isinstance(value, str):
        raise ConfigError("upstream: expected a URL string")
    parts = urlsplit(value)
    if parts.scheme != "http" or not parts.netloc:
        raise ConfigError(f"upstream: expected an absolute http:// URL, got {value!r}")
    if parts.query or parts.fragment:
        raise ConfigError("upstream: query or fragment not allowed")
    return f"http://{parts.netloc}{parts.path.rstrip('/')}"


def load_config(path: str | Path) -> ProxyConfig:
    """Parse a TOML proxy config; relative file paths resolve beside it."""
    config_path = Path(path)
    try:
        raw = tomllib.loads(config_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in ("listen", "upstream", "ruleset", "lexicon", "budget_chars", "direction"):
        if key not in raw:
            raise ConfigError(f"missing config key: {key}")

    host, port = _parse_listen(raw["listen"])
    upstream = _parse_upstream(raw["upstream"])

    base = config_path.resolve().parent

    def resolve(key: str) -> Path:
        value = raw[key]
        if not isinstance(value, str) or not value:
            raise ConfigError(f"{key}: expected a file path")
        return base / value

    budget_chars = raw["budget_chars"]
    if not isinstance(budget_chars, int) or isinstance(budget_chars, bool) or budget_chars < 0:
        raise ConfigError("budget_chars: expected a non-negative integer")
    direction_text = raw["direction"]
    if direction_text not in ("neg", "pos"):
        raise ConfigError("direction: expected \"neg\" or \"pos\"")
    direction = -1 if direction_text == "neg" else 1

    content_types = DEFAULT_CONTENT_TYPES
    if "content_types" in raw:
        value = raw["content_types"]
        if (
            not isinstance(value, list)
            or not value
            or not all(isinstance(item, str) and item for item in value)
        ):
            raise ConfigError("content_types: expected a non-empty list of media types")
        content_types = tuple(item.lower() for item in value)

    latency_log = None
    if "latency_log" in raw:
        value = raw["latency_log"]
        if not isinstance(value, str) or not value:
            raise ConfigError("latency_log: expected a file path")
        latency_log = base / value

    max_body = DEFAULT_MAX_BODY_BYTES
    if "max_body_bytes" in raw:
        value = raw["max_body_bytes"]
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ConfigError("max_body_bytes: expected a positive integer")
        max_body = value

    return ProxyConfig(
        listen_host=host,
        listen_port=port,
        upstream=upstream,
        ruleset_path=resolve("ruleset"),
        lexicon_path=resolve("lexicon"),
        budget=Budget(max_chars=budget_chars, direction=direction),
        content_types=content_types,
        latency_log_path=latency_log,
        max_body_bytes=max_body,
    )


class _ProxyState:
    __slots__ = (
        "config",
        "ruleset",
        "lexicon",
        "upstream_host",
        "upstream_port",
        "upstream_netloc",
        "upstream_path",
        "log_file",
        "log_lock",
    )

    def __init__(self, config: ProxyConfig, ruleset: CompiledRuleset, lexicon: Lexicon):
        self.config = config
        self.ruleset = ruleset
        self.lexicon = lexicon
        parts = urlsplit(config.upstream)
        self.upstream_host = parts.hostname or ""
        self.upstream_port = parts.port or 80
        self.upstream_netloc = parts.netloc
        self.upstream_path = parts.path
        self.log_file: IO[str] | None = None
        if config.latency_log_path is not None:
            self.log_file = open(config.latency_log_path, "a", encoding="utf-8")
        self.log_lock = threading.Lock()

    def log(self, url: str, outcome: RewriteOutcome) -> None:
        if self.log_file is None:
            return
        line = json.dumps(
            {
                "url": url,
                "bytes_in": outcome.bytes_in,
                "bytes_out": outcome.bytes_out,
                "edits_applied": outcome.edits_applied,
                "added_latency_ms": round(outcome.added_latency * 1000.0, 3),
            },
            ensure_ascii=False,
        )
        with self.log_lock:
            self.log_file.write(line + "\n")
            self.log_file.flush()

    def close(self) -> None:
        if self.log_file is not None:
            self.log_file.close()
            self.log_file = None


def _parse_content_type(value: str | None) -> tuple[str, str | None]:
    if not value:
        return "", None
    media, _, rest = value.partition(";")
    charset = None
    for param in rest.split(";"):
        name, _, raw = param.partition("=")
        if name.strip().lower() == "charset":
            charset = raw.strip().strip("\"'").lower()
    return media.strip().lower(), charset


class _ProxyHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    state: _ProxyState  # bound by build_server

    def log_message(self, format: str, *args: object) -> None:
        # The JSON latency log is the record; per-request stderr noise is not.
        pass

    def _forward(self) -> tuple[http.client.HTTPConnection, http.client.HTTPResponse]:
        state = self.state
        headers: dict[str, str] = {}
        for name, value in self.headers.items():
            lower = name.lower()
            if lower in _HOP_BY_HOP or lower == "host":
                continue
            headers[name] = value
        headers["Host"] = state.upstream_netloc
        headers["Connection"] = "close"
        body = None
        length = self.headers.get("Content-Length")
        if length is not None:
            body = self.rfile.read(int(length))
        connection = http.client.HTTPConnection(
            state.upstream_host, state.upstream_port, timeout=_UPSTREAM_TIMEOUT
        )
        target = state.upstream_path + self.path
        connection.request(self.command, target or "/", body=body, headers=headers)
        return connection, connection.getresponse()

    def _send_headers(self, status: int, reason: str, headers: list[tuple[str, str]]) -> None:
        self.send_response_only(status, reason)
        for name, value in headers:
            self.send_header(name, value)
        self.send_header("Connection", "close")
        self.end_headers()
        self.close_connection = True

    def _stream(
        self,
        response: http.client.HTTPResponse,
        status: int,
        reason: str,
        headers: list[tuple[str, str]],
        prefix: bytes = b"",
    ) -> tuple[int, int]:
        """Relay the body untouched; returns (bytes_in, bytes_out)."""
        self._send_headers(status, reason, headers)
        moved = len(prefix)
        if self.command != "HEAD" and prefix:
            self.wfile.write(prefix)
        while True:
            chunk = response.read(65536)
            if not chunk:
                break
            moved += len(chunk)
            if self.command != "HEAD":
                self.wfile.write(chunk)
        return moved, moved if self.command != "HEAD" else 0

    def _bad_gateway(self, url: str, reason: str) -> None:
        body = f"upstream request failed: {reason}\n".encode("utf-8")
        self._send_headers(
            502,
            "Bad Gateway",
            [
                ("Content-Type", "text/plain; charset=utf-8"),
                ("Content-Length", str(len(body))),
            ],
        )
        if self.command != "HEAD":
            self.wfile.write(body)
        self.state.log(url, RewriteOutcome(0, len(body), 0, 0.0))

    def _relay(self) -> None:
        state = self.state
        url = f"http://{state.upstream_netloc}{state.upstream_path}{self.path}"
        try:
            connection, response = self._forward()
        except (OSError, http.client.HTTPException) as exc:
            self._bad_gateway(url, str(exc))
            return
        try:
            self._respond(url, response)
        finally:
            connection.close()

    def _respond(self, url: str, response: http.client.HTTPResponse) -> None:
        state = self.state
        config = state.config
        status, reason = response.status, response.reason
        headers = [
            (name, value)
            for name, value in response.getheaders()
            if name.lower() not in _HOP_BY_HOP
        ]
        media, charset = _parse_content_type(response.getheader("Content-Type"))
        encoding = (response.getheader("Content-Encoding") or "identity").strip().lower()
        declared = response.getheader("Content-Length")
        small_enough = True
        if declared is not None:
            try:
                small_enough = int(declared) <= config.max_body_bytes
            except ValueError:
                small_enough = False
        eligible = (
            self.command != "HEAD"
            and media in config.content_types
            and encoding == "identity"
            and (charset is None or charset in _REWRITE_CHARSETS)
            and small_enough
            and scope_matches(state.ruleset.scope, DocMetadata(source_url=url, sender=None))
        )
        if not eligible:
            moved_in, moved_out = self._stream(response, status, reason, headers)
            state.log(url, RewriteOutcome(moved_in, moved_out, 0, 0.0))
            return

        body = response.read(config.max_body_bytes + 1)
        if len(body) > config.max_body_bytes:
            moved_in, moved_out = self._stream(response, status, reason, headers, prefix=body)
            state.log(url, RewriteOutcome(moved_in, moved_out, 0, 0.0))
            return

        started = time.perf_counter()
        payload = body
        applied = 0
        try:
            text = body.decode("utf-8")
            if media == "text/html":
                rewritten, applied = rewrite_html_counted(
                    text, state.ruleset, state.lexicon, config.budget
                )
            else:
                rewritten, applied = rewrite_plaintext(
                    text, state.ruleset, state.lexicon, config.budget
                )
            if applied:
                payload = rewritten.encode("utf-8")
        except Exception as exc:  # fail open: never block the page
            applied = 0
            payload = body
            print(f"atd-proxy: rewrite failed for {url}: {exc}", file=sys.stderr)
        added = time.perf_counter() - started

        out_headers = [(n, v) for n, v in headers if n.lower() != "content-length"]
        out_headers.append(("Content-Length", str(len(payload))))
        # Log before sending so a client that has read the response can rely
        # on the matching log line being durable.
        state.log(url, RewriteOutcome(len(body), len(payload), applied, added))
        self._send_headers(status, reason, out_headers)
        self.wfile.write(payload)

    do_GET = _relay
    do_HEAD = _relay
    do_POST = _relay
    do_PUT = _relay
    do_DELETE = _relay
    do_OPTIONS = _relay
    do_PATCH = _relay


class ProxyServer(ThreadingHTTPServer):
    daemon_threads = True
    # None until build_server binds the state; a failed bind closes the
    # half-built server, so server_close must tolerate the gap.
    state: _ProxyState | None = None

    def handle_error(self, request: object, client_address: object) -> None:
        exc = sys.exc_info()[1]
        if isinstance(exc, (ConnectionError, TimeoutError)):
            return
        super().handle_error(request, client_address)

    def server_close(self) -> None:
        super().server_close()
        if self.state is not None:
            self.state.close()


def build_server(config: ProxyConfig) -> ProxyServer:
    """Construct a ready-to-run server; config file problems surface here."""
    try:
        ruleset = parse_ruleset(config.ruleset_path.read_bytes())
    except OSError as exc:
        raise ConfigError(f"cannot read ruleset: {exc}") from exc
    try:
        lexicon = load_lexicon(config.lexicon_path.read_bytes())
    except OSError as exc:
        raise ConfigError(f"cannot read lexicon: {exc}") from exc
    state = _ProxyState(config, ruleset, lexicon)
    handler = type("BoundProxyHandler", (_ProxyHandler,), {"state": state})
    try:
        server = ProxyServer((config.listen_host, config.listen_port), handler)
    except OSError as exc:
        state.close()
        raise ConfigError(f"cannot bind {config.listen_host}:{config.listen_port}: {exc}") from exc
    server.state = state
    return server


def serve(config: ProxyConfig) -> NoReturn:
    """Run until interrupted; raises ConfigError on startup problems."""
    server = build_server(config)
    host, port = server.server_address[0], server.server_address[1]
    print(f"atd-proxy: listening on {host}:{port} -> {config.upstream}", file=sys.stderr)
    try:
        server.serve_forever()
    finally:
        server.server_close()
    raise SystemExit(0)
