#!/usr/bin/env python3
"""Regenerate the bundled ruleset asset and the parity fixtures.

The engine's command line is the oracle: `atd export` produces the canonical
ruleset the extension ships, and `atd transform` produces the expected output
for the 100-block corpus.  Run from anywhere; paths are anchored to this file.

The corpus blocks are single-line paragraphs (the interpreter sees one text
node per block), chosen to exercise every supported rule kind and the edges
of each: start-of-text and mid-text first-person triggers, reapplication
guards, case-preserving swaps in lower/Title/ALL-CAPS, her/him
disambiguation, multi-word swaps, deletions at block edges and with adjacent
or merged spans, and metric counts with separators and k/M suffixes.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
import tempfile
from pathlib import Path

FRONTEND = Path(__file__).resolve().parent.parent
ASSETS = FRONTEND / "assets"
FIXTURES = FRONTEND / "tests" / "fixtures"

# Kinds the extension interprets.  Politeness and block filtering stay
# engine-only, so the bundled ruleset must not contain them.
RULESET_SOURCE = {
    "version": 1,
    "scope": {"url_patterns": [], "senders": []},
    "rules": [
        {"id": "apologize", "kind": "insert_sorry", "intent": -0.5},
        {
            "id": "gender-swap",
            "kind": "swap",
            "intent": 0.0,
            "pairs": [
                ["king", "queen"],
                ["actress", "actor"],
                ["duchess", "duke"],
                ["her", "his"],
            ],
            "symmetric": True,
        },
        {
            "id": "musk",
            "kind": "swap",
            "intent": 0.0,
            "pairs": [["Elon Musk", "Grimes's Boyfriend"]],
            "symmetric": False,
        },
        {
            "id": "deflate",
            "kind": "delete_term",
            "intent": -0.5,
            "terms": ["great", "wonderful", "excellent"],
        },
        {
            "id": "demetricate",
            "kind": "strip_metric",
            "intent": 0.0,
            "nouns": ["likes", "friends", "followers", "comments", "shares", "retweets", "views"],
        },
    ],
}

HANDCRAFTED = [
    "I am looking for...",
    "I'm done with this",
    "I don't agree",
    "If I am sad, I'm feeling furious.",
    "Sorry, I am already apologizing.",
    "sorry I'm late again",
    "SORRY I'M LATE AGAIN",
    "I",
    "I  kept two spaces after the trigger.",
    "i'll see you at the dock",
    "I'd rather not, but I'll try.",
    "I've seen the duchess win 10 retweets.",
    "We think I'm overreacting.",
    "I'm I'm I'm",
    "The king spoke.",
    "THE KING SPOKE.",
    "King Lear met Queen Anne.",
    "The actress met the actor.",
    "the duchess and the duke left early.",
    "She took her umbrella.",
    "The prize was hers to keep.",
    "He gave the medal to her.",
    "He waved at her",
    "His car is red.",
    "Her Majesty met His Grace.",
    "her dog chased her",
    "Is that her?",
    "They sailed to Kingston.",
    "The actors rehearsed.",
    "Elon Musk plans to create bricks for affordable housing",
    "Is Elon Musk just an AI set on 'eccentric billionaire' mode?",
    "ELON MUSK LANDED.",
    "elon musk tweeted again",
    "It was a great day.",
    "A truly great, wonderful show.",
    "The demo was excellent",
    "wonderful wonderful wonderful",
    "wonderful",
    "great start, wonderful finish, excellent recovery",
    "The décor was great, naturally.",
    "The post got 1,200 likes and 34 comments.",
    "Around 5k shares and 2M views by noon.",
    "He counted 1000000 views.",
    "Version 7 release notes",
    "They hid the likes counter.",
    "12 LIKES VANISHED.",
    "Back-to-back: 3 likes 4 likes 5 likes.",
    "100 friends, 50 followers",
    "9 likes",
    "café views: 88 views since Monday",
    "I'm sure the KING got 1,200 likes on a great photo.",
    "No triggers in this plain sentence.",
]

OPENINGS = [
    "I am certain",
    "I'm told",
    "I'll admit",
    "The editor wrote that",
    "Witnesses say",
    "Nobody disputes that",
]
SUBJECTS = [
    "the king",
    "the queen",
    "the actress",
    "an actor",
    "the duchess",
    "Elon Musk",
    "the committee",
    "her brother",
    "his rival",
]
VERBS = ["praised", "ignored", "counted", "reviewed", "shared", "dismissed"]
OBJECTS = [
    "a great proposal",
    "a wonderful speech",
    "an excellent result",
    "the quarterly figures",
    "1,200 likes",
    "34 comments",
    "5k shares",
    "2M views",
    "the plain minutes",
    "her notes",
]
TAILS = [
    "before lunch.",
    "without comment.",
    "on the record.",
    "for the archive.",
    "and moved on.",
]


def build_corpus() -> list[str]:
    rng = random.Random(100)
    blocks = list(HANDCRAFTED)
    while len(blocks) < 100:
        blocks.append(
            " ".join(
                (
                    rng.choice(OPENINGS),
                    rng.choice(SUBJECTS),
                    rng.choice(VERBS),
                    rng.choice(OBJECTS),
                    rng.choice(TAILS),
                )
            )
        )
    return blocks


def run_cli(args: list[str]) -> str:
    proc = subprocess.run(
        [sys.executable, "-m", "atd.cli", *args],
        capture_output=True,
        text=True,
    )
    if proc.returncode != 0:
        raise SystemExit(f"atd {args[0]} failed:\n{proc.stderr}")
    return proc.stdout


def main() -> None:
    ASSETS.mkdir(parents=True, exist_ok=True)
    FIXTURES.mkdir(parents=True, exist_ok=True)

    with tempfile.TemporaryDirectory() as tmp:
        source = Path(tmp) / "ruleset.json"
        source.write_text(json.dumps(RULESET_SOURCE), encoding="utf-8")
        canonical = run_cli(["export", "--ruleset", str(source)])

        lexicon = Path(tmp) / "lexicon.tsv"
        lexicon.write_text("neutral\t0.0\n", encoding="utf-8")

        blocks = build_corpus()
        assert len(blocks) == 100
        assert all(block and "\n" not in block for block in blocks)

        corpus_path = Path(tmp) / "corpus.txt"
        corpus_path.write_text("\n\n".join(blocks) + "\n", encoding="utf-8")
        exported = Path(tmp) / "exported.json"
        exported.write_text(canonical, encoding="utf-8")
        rendered = run_cli(
            [
                "transform",
                "--ruleset", str(exported),
                "--lexicon", str(lexicon),
                "--in", str(corpus_path),
            ]
        )

    assert rendered.endswith("\n")
    expected = rendered[:-1].split("\n\n")
    assert len(expected) == 100, f"expected 100 blocks, got {len(expected)}"
    changed = sum(1 for a, b in zip(blocks, expected) if a != b)
    assert changed >= 60, f"only {changed} corpus blocks changed"

    (ASSETS / "ruleset.json").write_text(canonical, encoding="utf-8")
    (FIXTURES / "ruleset.json").write_text(canonical, encoding="utf-8")
    (FIXTURES / "corpus.json").write_text(
        json.dumps(blocks, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )
    (FIXTURES / "expected.json").write_text(
        json.dumps(expected, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )
    print(f"wrote ruleset asset and {len(blocks)}-block fixtures ({changed} blocks change)")


if __name__ == "__main__":
    main()
