/** Incremental text node processing with reprocessing guards.
 *
 * Each text node is transformed at most once per content value: the marker
 * map remembers the value a node held after its last pass, so our own writes
 * (which fire characterData mutations) and repeat sweeps are no-ops.  Only
 * page text is touched; attributes, scripts, styles, and editable regions
 * are never modified.
 */

import type { Ruleset } from "./ruleset";
import { transformBlock } from "./transform";

export type Markers = WeakMap<Text, string>;

const SKIPPED_TAGS: ReadonlySet<string> = new Set([
  "SCRIPT",
  "STYLE",
  "NOSCRIPT",
  "TEXTAREA",
  "TITLE",
]);

function inSkippedRegion(node: Text): boolean {
  for (let el: Element | null = node.parentElement; el; el = el.parentElement) {
    if (SKIPPED_TAGS.has(el.tagName)) return true;
    const editable = el.getAttribute("contenteditable");
    if (editable !== null && editable.toLowerCase() !== "false") return true;
    if ((el as HTMLElement).isContentEditable) return true;
  }
  return false;
}

export function processTextNode(node: Text, ruleset: Ruleset, markers: Markers): boolean {
  const current = node.data;
  if (markers.get(node) === current) return false;
  if (inSkippedRegion(node)) return false;
  const out = transformBlock(ruleset, current);
  if (out !== current) node.data = out;
  // Recording the post-transform value also covers no-op passes, so an
  // unchanged node is never rescanned until the page rewrites it.
  markers.set(node, out);
  return out !== current;
}

export function processTree(root: Node, ruleset: Ruleset, markers: Markers): number {
  const doc = root.ownerDocument;
  if (!doc) return 0;
  const walker = doc.createTreeWalker(root, NodeFilter.SHOW_TEXT);
  const nodes: Text[] = [];
  for (let node = walker.nextNode(); node; node = walker.nextNode()) {
    nodes.push(node as Text);
  }
  if (root.nodeType === Node.TEXT_NODE) nodes.push(root as Text);
  let changed = 0;
  for (const node of nodes) {
    if (processTextNode(node, ruleset, markers)) changed += 1;
  }
  return changed;
}

/** Watch for DOM changes and process only new or changed text nodes. */
export function observePage(target: Node, ruleset: Ruleset, markers: Markers): MutationObserver {
  const observer = new MutationObserver((mutations) => {
    for (const mutation of mutations) {
      if (mutation.type === "characterData") {
        processTextNode(mutation.target as Text, ruleset, markers);
      } else if (mutation.type === "childList") {
        mutation.addedNodes.forEach((added) => {
          processTree(added, ruleset, markers);
        });
      }
    }
  });
  observer.observe(target, { subtree: true, childList: true, characterData: true });
  return observer;
}
