"""Single-token category labels for videos.

The primary categorizer asks a chat-completion endpoint to label the video
in one word; whatever comes back is sanitized down to ``[0-9A-Za-z_]+``
(models still return multi-word answers at times). The offline fallback is
a deterministic keyword scorer over a shipped table, used by default in
tests and offline mode.
"""

from __future__ import annotations

import re
import threading
from importlib import resources
from pathlib import Path
from typing import Callable, Optional, Union

from .metadata import Unavailable, VideoMetadata

UNKNOWN_LABEL = "Unknown"
DEFAULT_CATEGORY = "PeopleandBlogs"

PROMPT_TEMPLATE = (
    "The YouTube video has the title: {title}, and the description: {description}. "
    "Categorise this YouTube video in only ONE word strictly."
)

# ASCII class on purpose: the label contract is [0-9A-Za-z_], so unicode
# word characters are stripped too.
_NON_WORD_RE = re.compile(r"[^0-9A-Za-z_]+")

# Junk labels models emit for videos they cannot place; unified to one sentinel.
_JUNK_LABELS = frozenset({"unspecified", "uncategorized", "uncategorised", "unknown", "undefined"})

Categorizer = Callable[[str, str], str]


class CategorizerError(Exception):
    """Remote categorizer failure; caller may retry or fall back."""


def build_prompt(title: str, description: str) -> str:
    return PROMPT_TEMPLATE.format(title=title, description=description)


def sanitize_category(raw: str) -> str:
    """Strip everything outside ``[0-9A-Za-z_]``; empty or junk → "Unknown"."""
    label = _NON_WORD_RE.sub("", raw)
    if not label or label.lower() in _JUNK_LABELS:
        return UNKNOWN_LABEL
    return label


def categorize(meta: Union[VideoMetadata, Unavailable], impl: Categorizer) -> str:
    """Label one video; Unavailable metadata short-circuits to "Unknown"."""
    if isinstance(meta, Unavailable):
        return UNKNOWN_LABEL
    return sanitize_category(impl(meta.title or "", meta.description or ""))


def _keyword_table_path() -> Path:
    return Path(str(resources.files("emotrack").joinpath("data/category_keywords")))


def load_keyword_table(path: Optional[Path] = None) -> list[tuple[str, list[str]]]:
    """Ordered (category, keywords) pairs; line order is the tie-break order."""
    table = []
    text = (path or _keyword_table_path()).read_text(encoding="utf-8")
    for raw in text.splitlines():
        if not raw.strip() or raw.startswith("#"):
            continue
        category, _, keywords = raw.partition("\t")
        table.append((category, [k.strip().lower() for k in keywords.split(",") if k.strip()]))
    return table


class KeywordCategorizer:
    """Deterministic, case-insensitive keyword scorer.

    Scores each category by total keyword occurrences in title plus
    description; ties go to the category listed first; zero matches fall
    through to "PeopleandBlogs" (the platform's generic default).
    """

    def __init__(self, table_path: Optional[Path] = None):
        self.table = load_keyword_table(table_path)
        self._patterns = [
            (category, [re.compile(r"\b" + re.escape(k) + r"\b") for k in keywords])
            for category, keywords in self.table
        ]

    def __call__(self, title: str, description: str) -> str:
        text = f"{title}\n{description}".lower()
        best_category, best_score = DEFAULT_CATEGORY, 0
        for category, patterns in self._patterns:
            score = sum(len(pattern.findall(text)) for pattern in patterns)
            if score > best_score:
                best_category, best_score = category, score
        return best_category


def fallback_categorize(title: str, description: str) -> str:
    """Module-level convenience over a shared KeywordCategorizer."""
    global _default_keyword_categorizer
    if _default_keyword_categorizer is None:
        _default_keyword_categorizer = KeywordCategorizer()
    return _default_keyword_categorizer(title, description)


_default_keyword_categorizer: Optional[KeywordCategorizer] = None


class ChatCompletionCategorizer:
    """Remote categorizer speaking the chat-completion HTTP shape.

    Sends a single user message with the prompt; the first choice's
    message content is the raw label. Temperature defaults to 0 for
    reproducibility; in-flight requests are bounded.
    """

    def __init__(
        self,
        endpoint: str,
        api_key: str = "",
        model: str = "gpt-3.5-turbo",
        temperature: float = 0.0,
        max_in_flight: int = 2,
    ):
        import httpx

        self.endpoint = endpoint
        self.model = model
        self.temperature = temperature
        self._headers = {"Authorization": f"Bearer {api_key}"} if api_key else {}
        self._client = httpx.Client(timeout=60.0)
        self._sem = threading.Semaphore(max_in_flight)

    def __call__(self, title: str, description: str) -> str:
        import httpx

        body = {
            "model": self.model,
            "temperature": self.temperature,
            "messages": [{"role": "user", "content": build_prompt(title, description)}],
        }
        with self._sem:
            try:
                response = self._client.post(self.endpoint, json=body, headers=self._headers)
            except httpx.HTTPError as exc:
                raise CategorizerError(str(exc)) from exc
        if response.status_code != 200:
            raise CategorizerError(f"categorizer endpoint returned {response.status_code}")
        try:
            return response.json()["choices"][0]["message"]["content"]
        except (KeyError, IndexError, ValueError) as exc:
            raise CategorizerError("malformed chat-completion response") from exc
