"""Content-addressed on-disk cache of basis products [X][Y].

Each entry is a small JSON file named by the SHA-256 of its canonical key
(d, q, operation, method, X, Y); coefficients are stored as "a/b" strings.
Writes go to a temporary file in the same directory and are renamed into
place, so concurrent readers never see a partial entry.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .arith import format_rational, parse_rational
from .category import ObjClass
from .wire import dumps, object_from_json, object_to_json

ENV_VAR = "SPHERAHALL_CACHE"


class DiskCache:
    def __init__(self, root: str | os.PathLike) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(x: ObjClass, y: ObjClass, q: int, method: str) -> str:
        return dumps({"op": "basis_product", "d": x.d, "q": q, "method": method,
                      "x": object_to_json(x), "y": object_to_json(y)})

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode()).hexdigest()
        return self.root / digest[:2] / f"{digest}.json"

    def load(self, x: ObjClass, y: ObjClass, q: int, method: str):
        key = self.key(x, y, q, method)
        path = self._path(key)
        try:
            data = json.loads(path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            self.misses += 1
            return None
        if data.get("key") != key:
            self.misses += 1
            return None
        self.hits += 1
        return tuple((object_from_json(o), parse_rational(c)) for o, c in data["result"])

    def save(self, x: ObjClass, y: ObjClass, q: int, method: str, result) -> None:
        key = self.key(x, y, q, method)
        path = self._path(key)
        path.parent.mkdir(exist_ok=True)
        text = dumps({"key": key, "result": [[object_to_json(z), format_rational(c)] for z, c in result]})
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
