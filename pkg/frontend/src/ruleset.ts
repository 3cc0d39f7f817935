/** Ruleset document parsing and page scope checks.
 *
 * The JSON shape is the compatibility contract with the engine that exports
 * it; field names and validation mirror the engine's parser for the rule
 * kinds this interpreter supports.  Politeness and block filtering are
 * engine-only and are rejected here rather than silently skipped.
 */

export type RuleKind = "insert_sorry" | "swap" | "delete_term" | "strip_metric";

export interface SwapPair {
  readonly left: string;
  readonly right: string;
}

export interface Rule {
  readonly id: string;
  readonly kind: RuleKind;
  readonly intent: number;
  readonly pairs: readonly SwapPair[];
  readonly terms: readonly string[];
  readonly nouns: readonly string[];
}

export interface Scope {
  readonly urlPatterns: readonly string[];
  readonly senders: readonly string[];
}

export interface Ruleset {
  readonly version: 1;
  readonly scope: Scope;
  readonly rules: readonly Rule[];
}

export class RulesetError extends Error {}

const SUPPORTED_KINDS: ReadonlySet<string> = new Set([
  "insert_sorry",
  "swap",
  "delete_term",
  "strip_metric",
]);

function fail(message: string): never {
  throw new RulesetError(message);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function stringList(value: unknown, where: string): string[] {
  if (!Array.isArray(value) || value.some((item) => typeof item !== "string")) {
    fail(`${where} must be a list of strings`);
  }
  return value as string[];
}

function parseScope(value: unknown): Scope {
  if (!isRecord(value)) fail("scope must be an object");
  for (const key of Object.keys(value)) {
    if (key !== "url_patterns" && key !== "senders") {
      fail(`scope.${key}: unknown key`);
    }
  }
  const urlPatterns = stringList(value.url_patterns ?? [], "scope.url_patterns");
  const senders = stringList(value.senders ?? [], "scope.senders");
  for (const pattern of urlPatterns) {
    // Only * and ? wildcards are part of the contract.
    if (pattern.includes("[") || pattern.includes("]")) {
      fail(`scope pattern ${JSON.stringify(pattern)} uses unsupported brackets`);
    }
  }
  return { urlPatterns, senders };
}

/** Append missing reversed pairs, keeping declaration order first. */
function closePairs(pairs: SwapPair[]): SwapPair[] {
  const seen = new Set(pairs.map((pair) => pair.left.toLowerCase()));
  const closed = [...pairs];
  for (const { left, right } of pairs) {
    if (!seen.has(right.toLowerCase())) {
      closed.push({ left: right, right: left });
      seen.add(right.toLowerCase());
    }
  }
  return closed;
}

function parseRule(value: unknown, index: number): Rule {
  if (!isRecord(value)) fail(`rules[${index}] must be an object`);
  const where = `rules[${index}]`;
  const { id, kind, intent } = value;
  if (typeof id !== "string" || !id) fail(`${where}.id must be a non-empty string`);
  if (typeof kind !== "string") fail(`${where}.kind must be a string`);
  if (!SUPPORTED_KINDS.has(kind)) fail(`${where}.kind ${JSON.stringify(kind)} is not interpreted here`);
  if (typeof intent !== "number" || !Number.isFinite(intent)) {
    fail(`${where}.intent must be a finite number`);
  }

  let pairs: SwapPair[] = [];
  let terms: string[] = [];
  let nouns: string[] = [];
  if (kind === "swap") {
    const raw = value.pairs;
    if (!Array.isArray(raw) || raw.length === 0) fail(`${where}.pairs must be a non-empty list`);
    pairs = raw.map((entry, i) => {
      if (
        !Array.isArray(entry) ||
        entry.length !== 2 ||
        typeof entry[0] !== "string" ||
        typeof entry[1] !== "string" ||
        !entry[0] ||
        !entry[1]
      ) {
        fail(`${where}.pairs[${i}] must be [left, right] non-empty strings`);
      }
      return { left: entry[0], right: entry[1] };
    });
    if (value.symmetric === true) pairs = closePairs(pairs);
    const lefts = pairs.map((pair) => pair.left.toLowerCase());
    if (new Set(lefts).size !== lefts.length) fail(`${where}: swap pairs repeat a left-hand term`);
  } else if (kind === "delete_term") {
    terms = stringList(value.terms, `${where}.terms`);
    if (terms.length === 0 || terms.some((t) => !t)) fail(`${where}.terms must be non-empty strings`);
  } else if (kind === "strip_metric") {
    nouns = stringList(value.nouns, `${where}.nouns`);
    if (nouns.length === 0 || nouns.some((n) => !n)) fail(`${where}.nouns must be non-empty strings`);
  }
  return { id, kind: kind as RuleKind, intent, pairs, terms, nouns };
}

export function parseRuleset(text: string): Ruleset {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch (error) {
    fail(`ruleset is not valid JSON: ${String(error)}`);
  }
  if (!isRecord(data)) fail("ruleset must be a JSON object");
  for (const key of Object.keys(data)) {
    if (key !== "version" && key !== "scope" && key !== "rules") {
      fail(`${key}: unknown key`);
    }
  }
  if (data.version !== 1) fail(`unsupported ruleset version ${JSON.stringify(data.version)}`);
  const scope = parseScope(data.scope ?? {});
  if (!Array.isArray(data.rules)) fail("rules must be a list");
  const rules = data.rules.map(parseRule);
  const ids = rules.map((rule) => rule.id);
  if (new Set(ids).size !== ids.length) fail("rule ids must be unique");
  return { version: 1, scope, rules };
}

const GLOB_SPECIALS = /[.+^${}()|\\/[\]]/g;

function globToRegExp(pattern: string): RegExp {
  let out = "^";
  for (const ch of pattern) {
    if (ch === "*") out += ".*";
    else if (ch === "?") out += ".";
    else out += ch.replace(GLOB_SPECIALS, "\\$&");
  }
  return new RegExp(out + "$", "s");
}

/** True when this page falls inside the ruleset's scope.
 *
 * Empty selector lists match everything.  A page has no sender, and an
 * absent field only matches an empty selector list, so a non-empty senders
 * list puts every page out of scope.  URL patterns are case-sensitive globs
 * with * and ? wildcards.
 */
export function pageInScope(scope: Scope, url: string): boolean {
  if (scope.senders.length > 0) return false;
  if (scope.urlPatterns.length === 0) return true;
  return scope.urlPatterns.some((pattern) => globToRegExp(pattern).test(url));
}
