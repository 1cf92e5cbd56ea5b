"""File-backed JSON document store.

One document per file, grouped by collection subdirectory. Writes go to a
temp file in the same directory followed by an atomic rename, so a crash
never leaves a half-written document. Files that fail to parse at load
time are moved aside into a quarantine directory and logged rather than
taking the whole store down.
"""

from __future__ import annotations

import json
import logging
import os
import re
import threading
import time
from pathlib import Path

from .errors import StorageError

log = logging.getLogger("ecomod.storage")

_SAFE_ID = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


class JsonDocumentStore:
    def __init__(self, root: str | Path, collections: tuple[str, ...] = ("models", "runs")):
        self.root = Path(root)
        self.collections = collections
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            for name in collections:
                (self.root / name).mkdir(exist_ok=True)
            (self.root / "quarantine").mkdir(exist_ok=True)
            probe = self.root / ".write-probe"
            probe.write_text("", encoding="utf-8")
            probe.unlink()
        except OSError as exc:
            raise StorageError(f"store directory {self.root} is not writable: {exc}") from exc
        self._lock = threading.Lock()
        self._docs: dict[str, dict[str, dict]] = {name: {} for name in collections}
        self._load()

    def _load(self) -> None:
        for collection in self.collections:
            directory = self.root / collection
            for path in sorted(directory.glob("*.json")):
                try:
                    payload = json.loads(path.read_text(encoding="utf-8"))
                    if not isinstance(payload, dict):
                        raise ValueError("document root must be an object")
                except (ValueError, OSError) as exc:
                    self._quarantine(path, exc)
                    continue
                self._docs[collection][path.stem] = payload

    def _quarantine(self, path: Path, exc: Exception) -> None:
        target = self.root / "quarantine" / f"{path.name}.{int(time.time() * 1000)}"
        try:
            os.replace(path, target)
        except OSError:
            log.error("could not quarantine corrupt document %s", path)
            return
        log.warning("quarantined corrupt document %s -> %s (%s)", path, target, exc)

    def _path(self, collection: str, doc_id: str) -> Path:
        if collection not in self._docs:
            raise StorageError(f"unknown collection {collection!r}")
        if not _SAFE_ID.match(doc_id):
            raise StorageError(f"unsafe document id {doc_id!r}")
        return self.root / collection / f"{doc_id}.json"

    def put(self, collection: str, doc_id: str, payload: dict) -> None:
        path = self._path(collection, doc_id)
        data = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        with self._lock:
            tmp = path.with_name(f".{doc_id}.{os.getpid()}.{threading.get_ident()}.tmp")
            try:
                tmp.write_text(data, encoding="utf-8")
                os.replace(tmp, path)
            except OSError as exc:
                tmp.unlink(missing_ok=True)
                raise StorageError(f"write failed for {path}: {exc}") from exc
            self._docs[collection][doc_id] = payload

    def get(self, collection: str, doc_id: str) -> dict | None:
        if not _SAFE_ID.match(doc_id):
            return None
        with self._lock:
            doc = self._docs[collection].get(doc_id)
        return json.loads(json.dumps(doc)) if doc is not None else None

    def delete(self, collection: str, doc_id: str) -> bool:
        path = self._path(collection, doc_id)
        with self._lock:
            existed = self._docs[collection].pop(doc_id, None) is not None
            try:
                path.unlink(missing_ok=True)
            except OSError as exc:
                raise StorageError(f"delete failed for {path}: {exc}") from exc
        return existed

    def ids(self, collection: str) -> list[str]:
        with self._lock:
            return sorted(self._docs[collection])

    def all_docs(self, collection: str) -> dict[str, dict]:
        with self._lock:
            snapshot = dict(self._docs[collection])
        return json.loads(json.dumps(snapshot))
