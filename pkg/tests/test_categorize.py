import re

from hypothesis import given, settings
from hypothesis import strategies as st

from emotrack.categorize import (
    UNKNOWN_LABEL,
    KeywordCategorizer,
    build_prompt,
    categorize,
    fallback_categorize,
    load_keyword_table,
    sanitize_category,
)
from emotrack.metadata import UNAVAILABLE, VideoMetadata

LABEL_RE = re.compile(r"^[0-9A-Za-z_]+$")


def test_prompt_template_verbatim():
    assert build_prompt("T", "D") == (
        "The YouTube video has the title: T, and the description: D. "
        "Categorise this YouTube video in only ONE word strictly."
    )


def test_prompt_empty_slots():
    assert build_prompt("", "") == (
        "The YouTube video has the title: , and the description: . "
        "Categorise this YouTube video in only ONE word strictly."
    )


def test_prompt_preserves_newlines():
    assert "line1\nline2" in build_prompt("line1\nline2", "d")


class TestSanitize:
    def test_removes_spaces(self):
        assert sanitize_category("Chinese Drama") == "ChineseDrama"

    def test_identity(self):
        assert sanitize_category("Music") == "Music"

    def test_empty_after_removal(self):
        assert sanitize_category("!!!") == UNKNOWN_LABEL

    def test_junk_labels_unified(self):
        for junk in ("Unspecified", "Uncategorized", "Undefined", "unknown"):
            assert sanitize_category(junk) == UNKNOWN_LABEL


def test_categorize_unavailable_skips_impl():
    calls = []

    def impl(title, description):
        calls.append((title, description))
        return "Music"

    assert categorize(UNAVAILABLE, impl) == UNKNOWN_LABEL
    assert calls == []


def test_categorize_sanitizes_impl_output():
    meta = VideoMetadata("v", "t", "d", None)
    assert categorize(meta, lambda t, d: " Food ") == "Food"


def test_keyword_table_order_matches_native_category_list():
    table = load_keyword_table()
    assert [c for c, _ in table] == [
        "CarsandVehicles", "Comedy", "Education", "Entertainment",
        "FilmandAnimation", "Gaming", "HowtoandStyle", "Music",
        "NewsandPolitics", "NonprofitsandActivism", "PeopleandBlogs",
        "PetsandAnimals", "ScienceandTechnology", "Sport", "TravelandEvents",
    ]


class TestFallback:
    def test_sport_golden(self):
        # pinned by running the shipped keyword table
        assert fallback_categorize("NBA finals highlights", "basketball game") == "Sport"

    def test_music_golden(self):
        assert fallback_categorize("Lo-fi beats playlist", "chill music mix") == "Music"

    def test_zero_matches_default(self):
        assert fallback_categorize("", "") == "PeopleandBlogs"

    def test_tie_breaks_to_earlier_category(self):
        # one keyword each for Comedy ("funny") and Sport ("football"):
        # Comedy appears earlier in the category order
        assert fallback_categorize("funny football", "") == "Comedy"

    def test_case_insensitive(self):
        assert fallback_categorize("MUSIC", "") == fallback_categorize("music", "")

    def test_pure_function(self):
        fresh = KeywordCategorizer()
        for args in [("gaming stream", "minecraft"), ("", ""), ("dog video", "puppy")]:
            assert fresh(*args) == fallback_categorize(*args)


@settings(max_examples=500)
@given(st.text(max_size=64))
def test_sanitize_always_yields_valid_label(raw):
    label = sanitize_category(raw)
    assert LABEL_RE.match(label)


@settings(max_examples=500)
@given(st.text(max_size=64))
def test_sanitize_idempotent(raw):
    once = sanitize_category(raw)
    assert sanitize_category(once) == once


@settings(max_examples=200)
@given(st.text(max_size=40), st.text(max_size=40))
def test_fallback_emits_valid_labels(title, description):
    assert LABEL_RE.match(fallback_categorize(title, description))
