/** Text rewriting that matches the engine byte-for-byte.
 *
 * Every function here is a direct port of the engine's behavior for the four
 * interpreted rule kinds; the parity fixture test holds the two sides
 * together.  Word boundaries are "not flanked by a letter" with letters as
 * Unicode \p{L}, matching the engine's boundary on the text this extension
 * is pointed at.
 */

import type { Rule, Ruleset } from "./ruleset";

const LETTER = "\\p{L}";
const WORDCHAR = "[\\p{L}\\p{N}_]";

interface TextSpan {
  start: number;
  end: number;
}

function escapeLiteral(term: string): string {
  return term.replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
}

/** Case-insensitive whole-word matcher preferring the longest alternative. */
function compileTerms(terms: readonly string[]): RegExp {
  const ordered = [...new Set(terms)].sort(
    (a, b) => b.length - a.length || (a < b ? -1 : a > b ? 1 : 0),
  );
  if (ordered.length === 0) throw new Error("no terms to match");
  const alternatives = ordered.map(escapeLiteral).join("|");
  return new RegExp(`(?<!${LETTER})(?:${alternatives})(?!${LETTER})`, "giu");
}

function isLetter(ch: string): boolean {
  return /\p{L}/u.test(ch);
}

function isSpace(ch: string): boolean {
  return /\s/u.test(ch);
}

function applySpans(text: string, spans: TextSpan[], replacements: string[]): string {
  const pieces: string[] = [];
  let last = 0;
  spans.forEach((span, i) => {
    pieces.push(text.slice(last, span.start), replacements[i]);
    last = span.end;
  });
  pieces.push(text.slice(last));
  return pieces.join("");
}

// --- insert_sorry ---------------------------------------------------------

// A first-person trigger is "I" plus a space at the very start of the text,
// or "I" plus one of the contractions 'd/'ll/'m/'ve anywhere.  Mid-text only
// the contraction forms count.
const START_RE = new RegExp(`^I(?:\\s|'(?:d|ll|m|ve)(?!${WORDCHAR}))`, "iu");
const MID_RE = new RegExp(`(?<=\\s)I'(?:d|ll|m|ve)(?!${WORDCHAR})`, "giu");

const START_INSERT = "Sorry, ";
const MID_INSERT = "sorry, ";

/** True when the nearest word left of `pos` is "sorry" in any casing. */
function apologyPrecedes(text: string, pos: number): boolean {
  let i = pos;
  while (i > 0 && !isLetter(text[i - 1])) i -= 1;
  let j = i;
  while (j > 0 && isLetter(text[j - 1])) j -= 1;
  return text.slice(j, i).toLowerCase() === "sorry";
}

export function insertSorry(text: string): string {
  const positions: number[] = [];
  const head = START_RE.exec(text);
  if (head) positions.push(0);
  MID_RE.lastIndex = 0;
  for (let m = MID_RE.exec(text); m !== null; m = MID_RE.exec(text)) {
    positions.push(m.index);
  }
  const spans: TextSpan[] = [];
  const leads: string[] = [];
  for (const pos of positions) {
    if (apologyPrecedes(text, pos)) continue;
    spans.push({ start: pos, end: pos });
    leads.push(pos === 0 ? START_INSERT : MID_INSERT);
  }
  return applySpans(text, spans, leads);
}

// --- swap -----------------------------------------------------------------

/** ALL-CAPS and Title-case sources keep their shape. */
function recase(matched: string, replacement: string): string {
  const hasCase = matched.toLowerCase() !== matched.toUpperCase();
  if (matched.length > 1 && hasCase && matched === matched.toUpperCase()) {
    return replacement.toUpperCase();
  }
  const first = matched.slice(0, 1);
  if (first !== first.toLowerCase() && first === first.toUpperCase()) {
    return replacement.slice(0, 1).toUpperCase() + replacement.slice(1);
  }
  return replacement;
}

/** Pick "his" before a letter-initial token, "him" everywhere else. */
function herObjectOrPossessive(text: string, end: number): string {
  let i = end;
  while (i < text.length && isSpace(text[i])) i += 1;
  if (i > end && i < text.length && isLetter(text[i])) return "his";
  return "him";
}

export function swapTerms(text: string, pairs: readonly { left: string; right: string }[]): string {
  const mapping = new Map(pairs.map(({ left, right }) => [left.toLowerCase(), right]));
  if (mapping.size === 0) return text;
  const matcher = compileTerms([...mapping.keys()]);
  const spans: TextSpan[] = [];
  const replacements: string[] = [];
  for (let m = matcher.exec(text); m !== null; m = matcher.exec(text)) {
    const matched = m[0];
    let replacement = mapping.get(matched.toLowerCase()) as string;
    if (matched.toLowerCase() === "her" && replacement.toLowerCase() === "his") {
      replacement = herObjectOrPossessive(text, m.index + matched.length);
    }
    replacement = recase(matched, replacement);
    if (replacement !== matched) {
      spans.push({ start: m.index, end: m.index + matched.length });
      replacements.push(replacement);
    }
  }
  return applySpans(text, spans, replacements);
}

// --- delete_term ----------------------------------------------------------

/** Spans removing each term occurrence plus one adjacent space. */
function deleteSpans(text: string, terms: readonly string[]): TextSpan[] {
  const matcher = compileTerms(terms);
  const spans: TextSpan[] = [];
  for (let m = matcher.exec(text); m !== null; m = matcher.exec(text)) {
    let start = m.index;
    let end = m.index + m[0].length;
    if (end < text.length && text[end] === " ") end += 1;
    else if (start > 0 && text[start - 1] === " ") start -= 1;
    spans.push({ start, end });
  }
  return spans;
}

function mergeSpans(spans: TextSpan[]): TextSpan[] {
  const merged: TextSpan[] = [];
  const ordered = [...spans].sort((a, b) => a.start - b.start || a.end - b.end);
  for (const span of ordered) {
    const last = merged[merged.length - 1];
    if (last && span.start <= last.end) {
      last.end = Math.max(last.end, span.end);
    } else {
      merged.push({ ...span });
    }
  }
  return merged;
}

export function deleteTerms(text: string, terms: readonly string[]): string {
  if (terms.length === 0) return text;
  const spans = mergeSpans(deleteSpans(text, terms));
  return applySpans(text, spans, spans.map(() => ""));
}

// --- strip_metric ---------------------------------------------------------

// An integer with optional thousands separators, optionally suffixed k/M,
// plus one following space, directly before a metric noun.
const NUMBER = "(?:\\d{1,3}(?:,\\d{3})+|\\d+)[kKmM]?";

function metricPattern(nouns: readonly string[]): RegExp {
  const ordered = [...new Set(nouns)].sort(
    (a, b) => b.length - a.length || (a < b ? -1 : a > b ? 1 : 0),
  );
  const alternatives = ordered.map(escapeLiteral).join("|");
  return new RegExp(
    `(?<!${WORDCHAR})${NUMBER} (?=(?:${alternatives})(?!${LETTER}))`,
    "giu",
  );
}

export function stripMetrics(text: string, nouns: readonly string[]): string {
  if (nouns.length === 0) return text;
  const pattern = metricPattern(nouns);
  const spans: TextSpan[] = [];
  for (let m = pattern.exec(text); m !== null; m = pattern.exec(text)) {
    spans.push({ start: m.index, end: m.index + m[0].length });
  }
  return applySpans(text, spans, spans.map(() => ""));
}

// --- the interpreter ------------------------------------------------------

function applyRule(rule: Rule, text: string): string {
  switch (rule.kind) {
    case "insert_sorry":
      return insertSorry(text);
    case "swap":
      return swapTerms(text, rule.pairs);
    case "delete_term":
      return deleteTerms(text, rule.terms);
    case "strip_metric":
      return stripMetrics(text, rule.nouns);
  }
}

/** Fold every rule over one block of text, in declaration order. */
export function transformBlock(ruleset: Ruleset, text: string): string {
  let out = text;
  for (const rule of ruleset.rules) {
    out = applyRule(rule, out);
  }
  return out;
}
