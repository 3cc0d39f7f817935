import { describe, expect, it } from "vitest";

import { parseRuleset } from "../src/ruleset";
import { deleteTerms, insertSorry, stripMetrics, swapTerms, transformBlock } from "../src/transform";
import rulesetJson from "./fixtures/ruleset.json";
import CORPUS from "./fixtures/corpus.json";
import EXPECTED from "./fixtures/expected.json";

const RULESET = parseRuleset(JSON.stringify(rulesetJson));

describe("engine parity", () => {
  it("matches the engine byte-for-byte on the 100-block corpus", () => {
    expect(CORPUS).toHaveLength(100);
    expect(EXPECTED).toHaveLength(100);
    CORPUS.forEach((block, i) => {
      expect(transformBlock(RULESET, block), `block ${i}: ${block}`).toBe(EXPECTED[i]);
    });
  });

  it("matches the engine on the corpus joined as one document", () => {
    const joined = CORPUS.map((block) => transformBlock(RULESET, block)).join("\n\n") + "\n";
    expect(joined).toBe(EXPECTED.join("\n\n") + "\n");
  });

  it("changes most corpus blocks", () => {
    const changed = CORPUS.filter((block, i) => block !== EXPECTED[i]).length;
    expect(changed).toBeGreaterThanOrEqual(60);
  });
});

describe("apology insertion", () => {
  it("reproduces the golden outputs", () => {
    expect(insertSorry("I am looking for...")).toBe("Sorry, I am looking for...");
    expect(insertSorry("I'm done with this")).toBe("Sorry, I'm done with this");
    expect(insertSorry("I don't agree")).toBe("Sorry, I don't agree");
    expect(insertSorry("If I am sad, I'm feeling furious.")).toBe(
      "If I am sad, sorry, I'm feeling furious.",
    );
  });

  it("is idempotent", () => {
    for (const text of [
      "I am looking for...",
      "If I am sad, I'm feeling furious.",
      "I'd say I'll go, I've decided.",
      "no triggers here",
      "",
    ]) {
      const once = insertSorry(text);
      expect(insertSorry(once)).toBe(once);
    }
  });

  it("leaves bare mid-sentence I alone", () => {
    expect(insertSorry("If I am sad, so be it.")).toBe("If I am sad, so be it.");
  });

  it("skips contractions glued to a longer word", () => {
    expect(insertSorry("The file I'mage.txt exists")).toBe("The file I'mage.txt exists");
  });
});

describe("swaps", () => {
  const GENDER = [
    { left: "king", right: "queen" },
    { left: "queen", right: "king" },
    { left: "her", right: "his" },
    { left: "his", right: "her" },
  ];

  it("reproduces the golden output", () => {
    expect(
      swapTerms("Elon Musk plans to create bricks for affordable housing", [
        { left: "Elon Musk", right: "Grimes's Boyfriend" },
      ]),
    ).toBe("Grimes's Boyfriend plans to create bricks for affordable housing");
  });

  it("preserves casing shapes", () => {
    expect(swapTerms("king KING King", GENDER)).toBe("queen QUEEN Queen");
  });

  it("disambiguates her into his or him", () => {
    expect(swapTerms("She took her umbrella.", GENDER)).toBe("She took his umbrella.");
    expect(swapTerms("He waved at her", GENDER)).toBe("He waved at him");
    expect(swapTerms("He waved at her.", GENDER)).toBe("He waved at him.");
  });

  it("never matches inside longer words", () => {
    expect(swapTerms("Kingston hers kingdom", GENDER)).toBe("Kingston hers kingdom");
  });

  it("is an involution on symmetric single-word pairs", () => {
    const pairs = [
      { left: "king", right: "queen" },
      { left: "queen", right: "king" },
    ];
    for (const text of ["the king met the queen", "QUEEN king Queen King", "no royals"]) {
      expect(swapTerms(swapTerms(text, pairs), pairs)).toBe(text);
    }
  });
});

describe("deletions", () => {
  it("removes the term plus one adjacent space", () => {
    expect(deleteTerms("It was a great day.", ["great"])).toBe("It was a day.");
    expect(deleteTerms("The demo was excellent", ["excellent"])).toBe("The demo was");
    expect(deleteTerms("great start", ["great"])).toBe("start");
  });

  it("merges adjacent deletions", () => {
    expect(deleteTerms("wonderful wonderful wonderful", ["wonderful"])).toBe("");
  });
});

describe("metric stripping", () => {
  it("removes counts before metric nouns only", () => {
    expect(stripMetrics("got 1,200 likes and 34 comments", ["likes", "comments"])).toBe(
      "got likes and comments",
    );
    expect(stripMetrics("Around 5k shares and 2M views", ["shares", "views"])).toBe(
      "Around shares and views",
    );
    expect(stripMetrics("Version 7 release notes", ["likes"])).toBe("Version 7 release notes");
    expect(stripMetrics("the likes counter", ["likes"])).toBe("the likes counter");
  });

  it("respects word boundaries around the count and noun", () => {
    expect(stripMetrics("x9 likes", ["likes"])).toBe("x9 likes");
    expect(stripMetrics("9 likesx", ["likes"])).toBe("9 likesx");
  });
});
