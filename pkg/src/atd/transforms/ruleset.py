"""Ruleset (de)serialization: the compatibility contract with interpreters."""

from __future__ import annotations

import json
from typing import Any

from ..errors import RulesetError
from .model import (
    POLITENESS_MODES,
    RULE_KINDS,
    RULESET_VERSION,
    CompiledRuleset,
    Rule,
    TargetScope,
)

_TOP_KEYS = {"version", "scope", "rules"}
_SCOPE_KEYS = {"url_patterns", "senders"}
_COMMON_RULE_KEYS = {"id", "kind", "intent"}
_KIND_KEYS = {
    "insert_sorry": set(),
    "swap": {"pairs", "symmetric"},
    "politeness": {"mode", "threat", "preamble"},
    "delete_term": {"terms"},
    "filter_block": {"terms"},
    "strip_metric": {"nouns"},
}
_REQUIRED_KIND_KEYS = {
    "insert_sorry": set(),
    "swap": {"pairs"},
    "politeness": {"mode"},
    "delete_term": {"terms"},
    "filter_block": {"terms"},
    "strip_metric": {"nouns"},
}


def _fail(path: str, problem: str) -> RulesetError:
    return RulesetError(f"{path}: {problem}")


def _string_list(value: Any, path: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise _fail(path, "expected a list of strings")
    return tuple(value)


def _check_glob(pattern: str, path: str) -> None:
    # Only * and ? wildcards are part of the contract; character classes
    # would silently change meaning under fnmatch, so reject them.
    if "[" in pattern or "]" in pattern:
        raise _fail(path, "only * and ? wildcards are allowed in url patterns")


def _parse_scope(value: Any, path: str) -> TargetScope:
    if not isinstance(value, dict):
        raise _fail(path, "expected an object")
    unknown = set(value) - _SCOPE_KEYS
    if unknown:
        raise _fail(f"{path}.{sorted(unknown)[0]}", "unknown key")
    url_patterns = _string_list(value.get("url_patterns", []), f"{path}.url_patterns")
    for i, pattern in enumerate(url_patterns):
        if not pattern:
            raise _fail(f"{path}.url_patterns[{i}]", "empty pattern")
        _check_glob(pattern, f"{path}.url_patterns[{i}]")
    senders = _string_list(value.get("senders", []), f"{path}.senders")
    for i, sender in enumerate(senders):
        if not sender:
            raise _fail(f"{path}.senders[{i}]", "empty sender")
    return TargetScope(url_patterns=url_patterns, senders=senders)


def _parse_pairs(value: Any, path: str) -> tuple[tuple[str, str], ...]:
    if not isinstance(value, list) or not value:
        raise _fail(path, "expected a non-empty list of [left, right] pairs")
    pairs = []
    for i, item in enumerate(value):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(side, str) and side for side in item)
        ):
            raise _fail(f"{path}[{i}]", "expected [left, right] with non-empty strings")
        pairs.append((item[0], item[1]))
    return tuple(pairs)


def _parse_rule(value: Any, path: str) -> Rule:
    if not isinstance(value, dict):
        raise _fail(path, "expected an object")
    kind = value.get("kind")
    if kind is None:
        raise _fail(f"{path}.kind", "missing required param")
    if not isinstance(kind, str) or kind not in RULE_KINDS:
        raise _fail(f"{path}.kind", f"unknown kind {kind!r}")
    allowed = _COMMON_RULE_KEYS | _KIND_KEYS[kind]
    unknown = set(value) - allowed
    if unknown:
        raise _fail(f"{path}.{sorted(unknown)[0]}", f"unknown key for kind {kind!r}")
    for key in _REQUIRED_KIND_KEYS[kind] | {"id", "intent"}:
        if key not in value:
            raise _fail(f"{path}.{key}", "missing required param")
    rule_id = value["id"]
    if not isinstance(rule_id, str) or not rule_id:
        raise _fail(f"{path}.id", "expected a non-empty string")
    intent = value["intent"]
    if isinstance(intent, bool) or not isinstance(intent, (int, float)):
        raise _fail(f"{path}.intent", "expected a number")
    if not -1.0 <= intent <= 1.0:
        raise _fail(f"{path}.intent", f"outside [-1, 1]: {intent}")

    kwargs: dict[str, Any] = {}
    if kind == "swap":
        kwargs["pairs"] = _parse_pairs(value["pairs"], f"{path}.pairs")
        symmetric = value.get("symmetric", False)
        if not isinstance(symmetric, bool):
            raise _fail(f"{path}.symmetric", "expected a boolean")
        kwargs["symmetric"] = symmetric
    elif kind == "politeness":
        mode = value["mode"]
        if mode not in POLITENESS_MODES:
            raise _fail(f"{path}.mode", f"expected one of {list(POLITENESS_MODES)}")
        kwargs["mode"] = mode
        for phrase_key in ("threat", "preamble"):
            if phrase_key in value:
                phrase = value[phrase_key]
                if not isinstance(phrase, str) or not phrase:
                    raise _fail(f"{path}.{phrase_key}", "expected a non-empty string")
                kwargs[phrase_key] = phrase
    elif kind in ("delete_term", "filter_block"):
        terms = _string_list(value["terms"], f"{path}.terms")
        if not terms or not all(terms):
            raise _fail(f"{path}.terms", "expected non-empty terms")
        kwargs["terms"] = terms
    elif kind == "strip_metric":
        nouns = _string_list(value["nouns"], f"{path}.nouns")
        if not nouns or not all(nouns):
            raise _fail(f"{path}.nouns", "expected non-empty nouns")
        kwargs["nouns"] = nouns

    try:
        return Rule(id=rule_id, kind=kind, intent=float(intent), **kwargs)
    except ValueError as exc:
        raise _fail(path, str(exc)) from None


def parse_ruleset(data: bytes | str) -> CompiledRuleset:
    """Parse and validate a serialized ruleset document.

    Every rejection names the offending field, e.g. "rules[2].kind".
    """
    try:
        document = json.loads(data)
    except json.JSONDecodeError as exc:
        raise RulesetError(f"ruleset is not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise _fail("$", "expected a top-level object")
    unknown = set(document) - _TOP_KEYS
    if unknown:
        raise _fail(sorted(unknown)[0], "unknown key")
    version = document.get("version")
    if version is None:
        raise _fail("version", "missing required param")
    if version != RULESET_VERSION:
        raise _fail("version", f"unsupported version {version!r}")
    scope = _parse_scope(document.get("scope", {}), "scope")
    rules_value = document.get("rules")
    if not isinstance(rules_value, list):
        raise _fail("rules", "expected a list")
    rules = []
    seen_ids: set[str] = set()
    for i, rule_value in enumerate(rules_value):
        rule = _parse_rule(rule_value, f"rules[{i}]")
        if rule.id in seen_ids:
            raise _fail(f"rules[{i}].id", f"duplicate rule id {rule.id!r}")
        seen_ids.add(rule.id)
        rules.append(rule)
    return CompiledRuleset(version=version, scope=scope, rules=tuple(rules))


def _rule_to_dict(rule: Rule) -> dict[str, Any]:
    out: dict[str, Any] = {"id": rule.id, "kind": rule.kind, "intent": rule.intent}
    if rule.kind == "swap":
        out["pairs"] = [[left, right] for left, right in rule.pairs]
        out["symmetric"] = rule.symmetric
    elif rule.kind == "politeness":
        out["mode"] = rule.mode
        if rule.threat is not None:
            out["threat"] = rule.threat
        if rule.preamble is not None:
            out["preamble"] = rule.preamble
    elif rule.kind in ("delete_term", "filter_block"):
        out["terms"] = list(rule.terms)
    elif rule.kind == "strip_metric":
        out["nouns"] = list(rule.nouns)
    return out


def serialize_ruleset(ruleset: CompiledRuleset) -> str:
    """Canonical JSON form; parse_ruleset(serialize_ruleset(r)) equals r."""
    document = {
        "version": ruleset.version,
        "scope": {
            "url_patterns": list(ruleset.scope.url_patterns),
            "senders": list(ruleset.scope.senders),
        },
        "rules": [_rule_to_dict(rule) for rule in ruleset.rules],
    }
    return json.dumps(document, ensure_ascii=False, indent=2) + "\n"
