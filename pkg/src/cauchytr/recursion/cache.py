"""Memory and on-disk storage of correlators, keyed by curve fingerprint."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from ..errors import CacheMismatch
from .multidiff import MultiDifferential

CACHE_ENV = "CAUCHYTR_CACHE_DIR"
FORMAT = 1


class CorrelatorCache:
    """Correlators of one curve; entries never change once stored.

    With a directory, each ``(n, h)`` lives in its own JSON file named by the
    curve fingerprint and the splitting rule; files are written to a temporary
    name and renamed into place.
    """

    def __init__(self, curve, basis, directory: str | os.PathLike | None = None, splitting: str = "full"):
        self.fingerprint = curve.fingerprint
        self.basis = basis
        self.splitting = splitting
        self.directory = Path(directory) if directory else None
        self.memory: dict = {}
        self.orders: dict = {}
        self.hits: list = []

    def _path(self, n: int, h: int) -> Path:
        return self.directory / f"{self.fingerprint}-{self.splitting}-n{n}-h{h}.json"

    def get(self, n: int, h: int) -> MultiDifferential | None:
        key = (n, h)
        if key in self.memory:
            return self.memory[key]
        if self.directory is None:
            return None
        path = self._path(n, h)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheMismatch(f"unreadable cache file {path}: {exc}") from exc
        if doc.get("fingerprint") != self.fingerprint or doc.get("format") != FORMAT:
            raise CacheMismatch(f"cache file {path} does not belong to curve {self.fingerprint}")
        if (doc.get("n"), doc.get("h"), doc.get("splitting")) != (n, h, self.splitting):
            raise CacheMismatch(f"cache file {path} holds a different correlator")
        w = MultiDifferential.from_json(doc["payload"], self.basis)
        self.memory[key] = w
        if doc.get("series_order") is not None:
            self.orders[key] = int(doc["series_order"])
        self.hits.append(key)
        return w

    def put(self, w: MultiDifferential, order: int | None = None) -> None:
        key = (w.n, w.h)
        if key in self.memory:
            raise ValueError(f"correlator {key} already stored")
        self.memory[key] = w
        if order is not None:
            self.orders[key] = order
        if self.directory is None or w.symmetry_defects:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        doc = {
            "format": FORMAT,
            "fingerprint": self.fingerprint,
            "splitting": self.splitting,
            "n": w.n,
            "h": w.h,
            "series_order": order,
            "payload": w.to_json(),
        }
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, self._path(w.n, w.h))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def default_cache_dir() -> str | None:
    return os.environ.get(CACHE_ENV) or None
