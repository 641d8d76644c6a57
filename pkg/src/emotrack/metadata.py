"""Resolve video ids to title/description/native-category.

Two interchangeable providers: a remote one speaking the YouTube Data API
v3 ``videos.list?part=snippet`` shape (with a second call mapping
categoryId to its display name), and an offline fixture provider backed by
a tab-separated table. A per-run cache guarantees at most one upstream
lookup per id, since exports repeat videos heavily.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Protocol, Union
from urllib.parse import parse_qs, urlparse


class Unavailable:
    """Sentinel: the provider has no record (deleted/private video)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unavailable"


UNAVAILABLE = Unavailable()


class ProviderError(Exception):
    """Transient provider failure (network, quota). Retryable."""

    def __init__(self, message: str, retryable: bool = True):
        super().__init__(message)
        self.retryable = retryable


@dataclass(frozen=True)
class VideoMetadata:
    video_id: str
    title: Optional[str] = None
    description: Optional[str] = None
    native_category: Optional[str] = None
    duration_seconds: Optional[int] = None

    def __post_init__(self):
        if self.title is None and (self.description is not None or self.native_category is not None):
            raise ValueError("metadata availability is all-or-nothing")


class MetadataProvider(Protocol):
    def fetch(self, video_id: str) -> Union[VideoMetadata, Unavailable]: ...


def extract_video_id(url: str) -> Optional[str]:
    """Video id from a watch or shorts URL on www.youtube.com, else None."""
    parsed = urlparse(url)
    if parsed.netloc not in ("www.youtube.com", "youtube.com"):
        return None
    if parsed.path.startswith("/shorts/"):
        return parsed.path[len("/shorts/"):].split("/")[0] or None
    if parsed.path == "/watch":
        return parse_qs(parsed.query).get("v", [None])[0]
    return None


class FixtureProvider:
    """Reads a local tab-separated table:

    ``videoId<TAB>title<TAB>description<TAB>nativeCategory<TAB>durationSeconds``

    Empty trailing columns may be omitted; unknown ids are Unavailable.
    """

    def __init__(self, path: Union[str, Path]):
        self._table: dict[str, VideoMetadata] = {}
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            if not raw.strip() or raw.startswith("#"):
                continue
            cols = raw.split("\t")
            cols += [""] * (5 - len(cols))
            video_id, title, description, category, duration = cols[:5]
            self._table[video_id] = VideoMetadata(
                video_id=video_id,
                title=title or None,
                description=description or None,
                native_category=category or None,
                duration_seconds=int(duration) if duration else None,
            )

    def fetch(self, video_id: str) -> Union[VideoMetadata, Unavailable]:
        return self._table.get(video_id, UNAVAILABLE)


class RemoteProvider:
    """YouTube Data API v3 provider (``videos.list`` + ``videoCategories.list``).

    Category names are cached per id for the life of the provider; the
    number of in-flight requests is bounded.
    """

    BASE_URL = "https://www.googleapis.com/youtube/v3"

    def __init__(self, api_key: str, base_url: Optional[str] = None, max_in_flight: int = 4):
        import httpx

        self.api_key = api_key
        self.base_url = (base_url or self.BASE_URL).rstrip("/")
        self._client = httpx.Client(timeout=30.0)
        self._sem = threading.Semaphore(max_in_flight)
        self._category_names: dict[str, str] = {}
        self._category_lock = threading.Lock()

    def fetch(self, video_id: str) -> Union[VideoMetadata, Unavailable]:
        items = self._get("videos", {"part": "snippet", "id": video_id}).get("items", [])
        if not items:
            return UNAVAILABLE
        snippet = items[0].get("snippet", {})
        category = self._category_name(str(snippet.get("categoryId", "")))
        return VideoMetadata(
            video_id=video_id,
            title=snippet.get("title", ""),
            description=snippet.get("description", ""),
            native_category=category,
        )

    def _category_name(self, category_id: str) -> Optional[str]:
        if not category_id:
            return None
        with self._category_lock:
            if category_id in self._category_names:
                return self._category_names[category_id]
        items = self._get("videoCategories", {"part": "snippet", "id": category_id}).get("items", [])
        name = items[0]["snippet"]["title"] if items else None
        if name is not None:
            with self._category_lock:
                self._category_names[category_id] = name
        return name

    def _get(self, resource: str, params: dict) -> dict:
        import httpx

        with self._sem:
            try:
                response = self._client.get(
                    f"{self.base_url}/{resource}", params={**params, "key": self.api_key}
                )
            except httpx.HTTPError as exc:
                raise ProviderError(str(exc)) from exc
        if response.status_code != 200:
            raise ProviderError(
                f"{resource} returned {response.status_code}",
                retryable=response.status_code in (403, 429, 500, 502, 503),
            )
        return response.json()


class CachingProvider:
    """Per-run cache so each id hits the upstream provider at most once."""

    def __init__(self, inner: MetadataProvider):
        self.inner = inner
        self._cache: dict[str, Union[VideoMetadata, Unavailable]] = {}
        self._lock = threading.Lock()

    def fetch(self, video_id: str) -> Union[VideoMetadata, Unavailable]:
        with self._lock:
            if video_id in self._cache:
                return self._cache[video_id]
        result = self.inner.fetch(video_id)
        with self._lock:
            self._cache.setdefault(video_id, result)
        return result


def fetch_metadata(provider: MetadataProvider, video_id: str) -> Union[VideoMetadata, Unavailable]:
    if not video_id:
        raise ValueError("empty video id")
    return provider.fetch(video_id)
