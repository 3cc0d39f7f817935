"""Detector tests: canonicalization, minimal word diffs, edit replay
classification, and report serialization."""

from __future__ import annotations

import hashlib
import json

from hypothesis import given, settings
from hypothesis import strategies as st

from atd.detector import (
    Edit,
    RuleMatch,
    build_report,
    canonicalize,
    classify_edits,
    diff_texts,
    reconstruct,
    report_to_dict,
    serialize_report,
)
from atd.transforms import parse_ruleset

from conftest import lcs_length

SORRY_SWAP_RULESET = parse_ruleset(
    b"""
    {
      "version": 1,
      "scope": {},
      "rules": [
        {"id": "apologize", "kind": "insert_sorry", "intent": -0.5},
        {"id": "gender-swap", "kind": "swap", "intent": 0.0,
         "pairs": [["king", "queen"]], "symmetric": true},
        {"id": "deflate", "kind": "delete_term", "intent": -0.5,
         "terms": ["great"]}
      ]
    }
    """
)


class TestCanonicalize:
    def test_collapses_whitespace_runs(self):
        assert canonicalize("  a\t\tb\nc  ").text == "a b c"

    def test_idempotent(self):
        once = canonicalize(" I agree  now ")
        assert canonicalize(once.text) == once

    def test_nfc_normalization(self):
        composed = canonicalize("café")
        decomposed = canonicalize("café")
        assert composed == decomposed

    def test_digest_is_sha256_of_utf8(self):
        got = canonicalize("abc").digest
        assert got == hashlib.sha256(b"abc").hexdigest()
        # Frozen reference value for the standard test vector.
        assert got == (
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        )

    def test_empty_text(self):
        empty = canonicalize("   \n\t ")
        assert empty.text == ""
        assert empty.words == []

    @given(st.text(max_size=60))
    @settings(max_examples=100, deadline=None)
    def test_idempotence_property(self, text):
        once = canonicalize(text)
        assert canonicalize(once.text) == once


WORDS = ["alpha", "beta", "gamma", "delta", "omega", "Sorry,"]


def _texts(max_size=12):
    return st.lists(st.sampled_from(WORDS), max_size=max_size).map(" ".join)


class TestDiffTexts:
    def test_identical_no_edits(self):
        c = canonicalize("nothing changed here")
        assert diff_texts(c, c) == []

    def test_whitespace_only_difference_no_edits(self):
        a = canonicalize("a  b\nc")
        b = canonicalize("a b c")
        assert diff_texts(a, b) == []

    def test_single_insert(self):
        edits = diff_texts(canonicalize("I agree"), canonicalize("Sorry, I agree"))
        assert edits == [
            Edit(
                type="insert",
                source_span=(0, 0),
                rendered_span=(0, 1),
                source_text="",
                rendered_text="Sorry,",
            )
        ]

    def test_single_delete(self):
        edits = diff_texts(canonicalize("a great day"), canonicalize("a day"))
        assert edits == [
            Edit(
                type="delete",
                source_span=(1, 2),
                rendered_span=(1, 1),
                source_text="great",
                rendered_text="",
            )
        ]

    def test_single_replace(self):
        edits = diff_texts(
            canonicalize("The king waved"), canonicalize("The queen waved")
        )
        assert edits == [
            Edit(
                type="replace",
                source_span=(1, 2),
                rendered_span=(1, 2),
                source_text="king",
                rendered_text="queen",
            )
        ]

    def test_adjacent_changes_merge_into_one_edit(self):
        edits = diff_texts(canonicalize("a b c"), canonicalize("a X Y c"))
        assert len(edits) == 1
        assert edits[0].type == "replace"
        assert edits[0].source_text == "b"
        assert edits[0].rendered_text == "X Y"

    def test_distant_changes_stay_separate(self):
        edits = diff_texts(
            canonicalize("one two three four five"),
            canonicalize("ONE two three four FIVE"),
        )
        assert [e.source_text for e in edits] == ["one", "five"]
        assert all(e.type == "replace" for e in edits)

    def test_empty_source(self):
        edits = diff_texts(canonicalize(""), canonicalize("brand new"))
        assert edits == [
            Edit(
                type="insert",
                source_span=(0, 0),
                rendered_span=(0, 2),
                source_text="",
                rendered_text="brand new",
            )
        ]

    def test_empty_rendered(self):
        edits = diff_texts(canonicalize("all gone"), canonicalize(""))
        assert len(edits) == 1
        assert edits[0].type == "delete"
        assert edits[0].source_text == "all gone"

    @given(_texts(), _texts())
    @settings(max_examples=150, deadline=None)
    def test_reconstruction(self, a, b):
        source, rendered = canonicalize(a), canonicalize(b)
        edits = diff_texts(source, rendered)
        assert reconstruct(source, edits) == rendered.text

    @given(_texts(max_size=18), _texts(max_size=18))
    @settings(max_examples=120, deadline=None)
    def test_edit_script_is_minimal(self, a, b):
        # Total inserted plus deleted words must equal the indel distance,
        # which a plain LCS table computes independently.
        source, rendered = canonicalize(a), canonicalize(b)
        edits = diff_texts(source, rendered)
        changed = sum(
            (e.source_span[1] - e.source_span[0])
            + (e.rendered_span[1] - e.rendered_span[0])
            for e in edits
        )
        n, m = len(source.words), len(rendered.words)
        assert changed == n + m - 2 * lcs_length(source.words, rendered.words)

    @given(_texts(), _texts())
    @settings(max_examples=100, deadline=None)
    def test_edit_spans_ordered_and_disjoint(self, a, b):
        source, rendered = canonicalize(a), canonicalize(b)
        edits = diff_texts(source, rendered)
        for prev, cur in zip(edits, edits[1:]):
            assert prev.source_span[1] <= cur.source_span[0]
            assert prev.rendered_span[1] <= cur.rendered_span[0]
        for e in edits:
            assert e.source_span[0] <= e.source_span[1]
            assert e.rendered_span[0] <= e.rendered_span[1]
            assert e.source_span != e.rendered_span or e.source_text != e.rendered_text


class TestClassifyEdits:
    def test_sorry_insertion_attributed(self):
        source = canonicalize("I agree with the plan")
        rendered = canonicalize("Sorry, I agree with the plan")
        edits = diff_texts(source, rendered)
        got = classify_edits(edits, SORRY_SWAP_RULESET, source)
        assert got == [RuleMatch(kind="insert_sorry", rule_id="apologize")]

    def test_swap_attributed(self):
        source = canonicalize("The king waved")
        rendered = canonicalize("The queen waved")
        edits = diff_texts(source, rendered)
        got = classify_edits(edits, SORRY_SWAP_RULESET, source)
        assert got == [RuleMatch(kind="swap", rule_id="gender-swap")]

    def test_mixed_edits_each_attributed(self):
        source = canonicalize("I think the king had a great day")
        rendered = canonicalize("Sorry, I think the queen had a day")
        edits = diff_texts(source, rendered)
        got = classify_edits(edits, SORRY_SWAP_RULESET, source)
        by_kind = {m.kind for m in got if m is not None}
        assert None not in got
        assert by_kind == {"insert_sorry", "swap", "delete_term"}

    def test_unexplained_edit_is_none(self):
        source = canonicalize("The weather is mild")
        rendered = canonicalize("The weather is wild")
        edits = diff_texts(source, rendered)
        got = classify_edits(edits, SORRY_SWAP_RULESET, source)
        assert got == [None]

    def test_first_matching_rule_wins(self):
        ruleset = parse_ruleset(
            b"""
            {
              "version": 1,
              "scope": {},
              "rules": [
                {"id": "first", "kind": "delete_term", "intent": -0.5,
                 "terms": ["great"]},
                {"id": "second", "kind": "delete_term", "intent": -0.5,
                 "terms": ["great", "wonderful"]}
              ]
            }
            """
        )
        source = canonicalize("a great day")
        rendered = canonicalize("a day")
        edits = diff_texts(source, rendered)
        got = classify_edits(edits, ruleset, source)
        assert got == [RuleMatch(kind="delete_term", rule_id="first")]

    def test_no_edits_no_classifications(self):
        source = canonicalize("steady")
        assert classify_edits([], SORRY_SWAP_RULESET, source) == []


class TestBuildReport:
    def test_identical_inputs_empty_report(self):
        report = build_report("same text", "same  text\n")
        assert report.edits == ()
        assert report.source_digest == report.rendered_digest

    def test_digests_match_canonical_forms(self):
        report = build_report("I agree", "Sorry, I agree")
        assert report.source_digest == canonicalize("I agree").digest
        assert report.rendered_digest == canonicalize("Sorry, I agree").digest
        assert len(report.edits) == 1

    def test_without_ruleset_classifications_are_none(self):
        report = build_report("I agree", "Sorry, I agree")
        assert report.classifications == (None,)

    def test_with_ruleset_classifications_filled(self):
        report = build_report("I agree", "Sorry, I agree", SORRY_SWAP_RULESET)
        assert report.classifications == (
            RuleMatch(kind="insert_sorry", rule_id="apologize"),
        )

    @given(_texts(), _texts())
    @settings(max_examples=100, deadline=None)
    def test_edits_empty_iff_digests_equal(self, a, b):
        report = build_report(a, b)
        assert (report.edits == ()) == (
            report.source_digest == report.rendered_digest
        )


class TestReportSerialization:
    def test_shape_with_classification(self):
        report = build_report("I agree", "Sorry, I agree", SORRY_SWAP_RULESET)
        payload = json.loads(serialize_report(report))
        assert set(payload) == {"source_digest", "rendered_digest", "edits"}
        assert payload["edits"] == [
            {
                "type": "insert",
                "source_span": [0, 0],
                "rendered_span": [0, 1],
                "source_text": "",
                "rendered_text": "Sorry,",
                "classified_as": "insert_sorry",
            }
        ]

    def test_unknown_when_unexplained(self):
        report = build_report("mild day", "wild day", SORRY_SWAP_RULESET)
        payload = json.loads(serialize_report(report))
        assert payload["edits"][0]["classified_as"] == "unknown"

    def test_null_when_not_classified(self):
        report = build_report("mild day", "wild day")
        payload = json.loads(serialize_report(report, classified=False))
        assert payload["edits"][0]["classified_as"] is None

    def test_identical_serializes_empty_edits(self):
        payload = report_to_dict(build_report("x y", "x y"))
        assert payload["edits"] == []
        assert payload["source_digest"] == payload["rendered_digest"]

    def test_serialized_text_ends_with_newline(self):
        assert serialize_report(build_report("a", "a")).endswith("\n")
