/** Content script entry point.
 *
 * Loads the bundled ruleset, checks the page against its scope, rewrites the
 * text already present, then watches for later DOM changes.  A malformed
 * ruleset logs one diagnostic and leaves the page alone.
 */

import { observePage, processTree, type Markers } from "./dom";
import { pageInScope, parseRuleset, type Ruleset } from "./ruleset";

declare const chrome: {
  runtime: { getURL(path: string): string };
};

async function loadRuleset(): Promise<Ruleset | null> {
  const url = chrome.runtime.getURL("assets/ruleset.json");
  const response = await fetch(url);
  if (!response.ok) {
    console.error(`atd: ruleset asset fetch failed (${response.status})`);
    return null;
  }
  try {
    return parseRuleset(await response.text());
  } catch (error) {
    console.error(`atd: ${error instanceof Error ? error.message : String(error)}`);
    return null;
  }
}

export async function start(): Promise<MutationObserver | null> {
  const ruleset = await loadRuleset();
  if (ruleset === null) return null;
  if (!pageInScope(ruleset.scope, location.href)) return null;
  const body = document.body;
  if (!body) return null;
  const markers: Markers = new WeakMap();
  processTree(body, ruleset, markers);
  return observePage(body, ruleset, markers);
}

// Under the extension runtime the chrome global exists; tests import start
// directly and drive it with stubbed globals instead.
if (typeof chrome !== "undefined") void start();
