"""File-backed hierarchical document store.

Layout mirrors a collection/document tree on disk:

* a collection is a directory,
* a document is a JSON file ``<name>.json`` inside its collection directory,
* a document's sub-collections live in a sibling directory ``<name>/``.

Segment names are percent-encoded on disk so collection names with spaces
("Mood Records", "YouTube Watch History") stay human-readable while staying
filesystem-safe. Writes go through a temp file followed by an atomic rename,
so an acked write survives a process kill.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import urllib.parse
from collections import defaultdict
from pathlib import Path
from typing import Iterator, Sequence, Union

Scalar = Union[str, int, bool]
Document = dict[str, Scalar]


class StoreError(Exception):
    pass


class InvalidPath(StoreError):
    pass


class NotFound(StoreError):
    pass


class IoFailure(StoreError):
    pass


def _check_path(segments: Sequence[str], *, want_document: bool) -> None:
    if not segments:
        raise InvalidPath("empty path")
    if want_document and len(segments) % 2 != 0:
        raise InvalidPath(f"path {segments!r} does not address a document")
    if not want_document and len(segments) % 2 != 1:
        raise InvalidPath(f"path {segments!r} does not address a collection")
    for seg in segments:
        if not seg or "/" in seg or "\\" in seg or seg in (".", ".."):
            raise InvalidPath(f"bad path segment {seg!r}")


def _enc(segment: str) -> str:
    # safe="" so that "/" and friends are always encoded
    return urllib.parse.quote(segment, safe=" ").replace(" ", "%20")


def _dec(name: str) -> str:
    return urllib.parse.unquote(name)


class DocumentStore:
    """Hierarchical document store rooted at a data directory.

    Thread-safe: writes to the same document serialize on a per-document
    lock; writes to different documents proceed independently.
    """

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
        self._locks_guard = threading.Lock()

    def _lock_for(self, key: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks[key]

    def _collection_dir(self, segments: Sequence[str]) -> Path:
        return self.root.joinpath(*(_enc(s) for s in segments))

    def _document_file(self, segments: Sequence[str]) -> Path:
        return self._collection_dir(segments[:-1]) / (_enc(segments[-1]) + ".json")

    def put_document(self, path: Sequence[str], doc: Document) -> None:
        """Create or replace the document at ``path``."""
        _check_path(path, want_document=True)
        _validate_doc(doc)
        target = self._document_file(path)
        with self._lock_for(str(target)):
            self._write_atomic(target, doc)

    def update_fields(self, path: Sequence[str], partial: Document) -> None:
        """Merge ``partial`` into an existing document; other fields untouched."""
        _check_path(path, want_document=True)
        _validate_doc(partial)
        target = self._document_file(path)
        with self._lock_for(str(target)):
            if not target.is_file():
                raise NotFound("/".join(path))
            doc = self._read(target)
            doc.update(partial)
            self._write_atomic(target, doc)

    def get_document(self, path: Sequence[str]) -> Document:
        _check_path(path, want_document=True)
        target = self._document_file(path)
        if not target.is_file():
            raise NotFound("/".join(path))
        return self._read(target)

    def has_document(self, path: Sequence[str]) -> bool:
        _check_path(path, want_document=True)
        return self._document_file(path).is_file()

    def list_collection(self, path: Sequence[str]) -> list[tuple[str, Document]]:
        """Documents of one collection, sorted by name ascending.

        Timestamp-keyed documents therefore come back in chronological
        order. Nested collections are not descended into.
        """
        _check_path(path, want_document=False)
        directory = self._collection_dir(path)
        if not directory.is_dir():
            return []
        names = sorted(
            _dec(p.name[: -len(".json")]) for p in directory.iterdir()
            if p.is_file() and p.name.endswith(".json")
        )
        return [(name, self._read(directory / (_enc(name) + ".json"))) for name in names]

    def has_collection_dir(self, path: Sequence[str]) -> bool:
        _check_path(path, want_document=False)
        return self._collection_dir(path).is_dir()

    def iter_collection(self, path: Sequence[str]) -> Iterator[tuple[str, Document]]:
        yield from self.list_collection(path)

    def _read(self, target: Path) -> Document:
        try:
            with open(target, "r", encoding="utf-8") as fh:
                return json.load(fh)
        except OSError as exc:
            raise IoFailure(str(exc)) from exc

    def _write_atomic(self, target: Path, doc: Document) -> None:
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=target.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump(doc, fh, ensure_ascii=False, sort_keys=True)
                    fh.flush()
                    os.fsync(fh.fileno())
                os.replace(tmp, target)
            finally:
                if os.path.exists(tmp):
                    os.unlink(tmp)
        except OSError as exc:
            raise IoFailure(str(exc)) from exc


def _validate_doc(doc: Document) -> None:
    if not isinstance(doc, dict):
        raise InvalidPath("document must be a field map")
    for key, value in doc.items():
        if not isinstance(key, str):
            raise InvalidPath(f"field name {key!r} is not text")
        if not isinstance(value, (str, int, bool)):
            raise InvalidPath(f"field {key!r} holds a non-scalar value {value!r}")
