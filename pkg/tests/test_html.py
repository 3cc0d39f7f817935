"""HTML tokenizer tests.

The contract under test: tokenization never fails, serialization is exact
concatenation (byte-faithful round-trip), text inside an open head is not
eligible for rewriting, and rawtext element content is opaque.
"""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from atd.proxy.htmlpage import Token, serialize, structure, tokenize

PAGE = (
    "<!doctype html>\n"
    "<html>\n"
    "<head>\n"
    "  <title>My page</title>\n"
    "  <style>body { color: red }</style>\n"
    "</head>\n"
    "<body>\n"
    "  <p>I agree with this.</p>\n"
    "  <script>if (a < b) { run() }</script>\n"
    "  <div class=\"x\">more text</div>\n"
    "</body>\n"
    "</html>\n"
)


def _text_tokens(html):
    return [t for t in tokenize(html) if t.kind == "text"]


class TestRoundTrip:
    def test_full_page(self):
        assert serialize(tokenize(PAGE)) == PAGE

    def test_malformed_inputs(self):
        cases = [
            "",
            "just text, no tags",
            "<p>unclosed paragraph",
            "a < b and c > d",
            "<",
            "text<",
            "<<p>>",
            "<p",
            "<!-- unterminated comment",
            "<![CDATA[ unterminated",
            "<!doctype",
            "<? unterminated pi",
            "<a href='q>u'>quoted gt</a>",
            '<img src="x" alt="a>b">after',
            "<script>never closed",
            "<p/>self closed</p>",
            "<B>upper</B>",
            "<div\ndata-x='1'\n>multiline tag</div>",
        ]
        for html in cases:
            assert serialize(tokenize(html)) == html

    @given(
        st.text(
            alphabet=st.sampled_from(list("<>/!?-abc'\" =[]ABC\n")), max_size=80
        )
    )
    @settings(max_examples=200, deadline=None)
    def test_arbitrary_tag_soup(self, html):
        assert serialize(tokenize(html)) == html


class TestTokenKinds:
    def test_comment(self):
        (token,) = tokenize("<!-- note -->")
        assert token == Token("comment", "<!-- note -->")

    def test_cdata(self):
        (token,) = tokenize("<![CDATA[x < y]]>")
        assert token.kind == "cdata"

    def test_doctype_is_decl(self):
        token = tokenize("<!doctype html><p>x</p>")[0]
        assert token == Token("decl", "<!doctype html>")

    def test_processing_instruction(self):
        (token,) = tokenize("<?xml version='1.0'?>")
        assert token.kind == "pi"

    def test_start_and_end_tags_carry_names(self):
        tokens = tokenize("<Div>x</DIV>")
        assert tokens[0].kind == "start" and tokens[0].name == "div"
        assert tokens[2].kind == "end" and tokens[2].name == "div"

    def test_lone_angle_bracket_is_text(self):
        tokens = tokenize("a < b")
        assert [t.kind for t in tokens] == ["text", "text", "text"]
        assert serialize(tokens) == "a < b"

    def test_quoted_gt_does_not_close_tag(self):
        tokens = tokenize("<a href='q>u'>body</a>")
        assert tokens[0].raw == "<a href='q>u'>"
        assert tokens[1] == Token("text", "body", eligible=True)


class TestRawtext:
    def test_script_content_is_raw(self):
        tokens = tokenize("<script>if (a < b) x()</script>")
        assert [t.kind for t in tokens] == ["start", "raw", "end"]
        assert tokens[1].raw == "if (a < b) x()"
        assert not tokens[1].eligible

    def test_rawtext_elements(self):
        for name in ("script", "style", "textarea", "title"):
            tokens = tokenize(f"<{name}>I agree</{name}>after")
            kinds = [t.kind for t in tokens]
            assert kinds == ["start", "raw", "end", "text"], name
            assert tokens[1].name == name

    def test_rawtext_close_is_case_insensitive(self):
        tokens = tokenize("<script>x</SCRIPT>done")
        assert [t.kind for t in tokens] == ["start", "raw", "end", "text"]

    def test_rawtext_ignores_markup_inside(self):
        tokens = tokenize("<script>var s = '<p>not a tag</p>';</script>")
        assert tokens[1].kind == "raw"
        assert "<p>" in tokens[1].raw

    def test_unterminated_rawtext_swallows_rest(self):
        tokens = tokenize("<style>p { }")
        assert [t.kind for t in tokens] == ["start", "raw"]

    def test_empty_rawtext_produces_no_raw_token(self):
        tokens = tokenize("<script></script>")
        assert [t.kind for t in tokens] == ["start", "end"]


class TestEligibility:
    def test_body_text_eligible(self):
        (token,) = _text_tokens("<body><p>hello</p></body>")
        assert token.eligible

    def test_bare_fragment_is_body_content(self):
        (token,) = _text_tokens("no wrappers at all")
        assert token.eligible

    def test_head_text_not_eligible(self):
        tokens = _text_tokens("<head>meta text</head><body>page text</body>")
        assert [t.eligible for t in tokens] == [False, True]

    def test_body_start_implies_head_closed(self):
        tokens = _text_tokens("<head><meta charset='utf-8'><body>visible")
        assert [t.eligible for t in tokens] == [True]

    def test_nested_inside_head_not_eligible(self):
        tokens = _text_tokens("<head><noscript>x</noscript>y</head>z")
        assert [t.eligible for t in tokens] == [False, False, True]

    def test_void_elements_do_not_nest(self):
        tokens = _text_tokens("<br>a<img src='x'>b<hr>c")
        assert all(t.eligible for t in tokens)

    def test_self_closing_tag_does_not_nest(self):
        (token,) = _text_tokens("<head/>text")
        assert token.eligible

    def test_end_tag_pops_nearest_match(self):
        # The stray </div> must not leave head on the stack forever.
        tokens = _text_tokens("<head><div></head></div>after")
        assert [t.eligible for t in tokens] == [True]

    def test_title_content_never_a_text_token(self):
        tokens = tokenize("<head><title>Site name</title></head><body>x")
        raw = [t for t in tokens if t.kind == "raw"]
        assert len(raw) == 1 and raw[0].name == "title"


class TestStructure:
    def test_drops_only_text(self):
        tokens = tokenize(PAGE)
        kinds = {kind for kind, _ in structure(tokens)}
        assert "text" not in kinds
        assert {"decl", "start", "end", "raw"} <= kinds

    def test_invariant_under_text_change(self):
        before = tokenize("<div><p>old words</p></div>")
        after = tokenize("<div><p>completely different</p></div>")
        assert structure(before) == structure(after)

    def test_sensitive_to_markup_change(self):
        a = tokenize("<div><p>x</p></div>")
        b = tokenize("<div><b>x</b></div>")
        assert structure(a) != structure(b)
