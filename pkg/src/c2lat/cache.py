"""Content-addressed JSON cache for the expensive searches.

An entry is keyed by a digest of its kind, the package version and the text
of every input it depends on (presentations, adjacency lists), so a changed
input can never be served a stale result.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable

from . import __version__

ENV_VAR = "C2LAT_CACHE"


def digest(kind: str, inputs: list[str]) -> str:
    h = hashlib.sha256()
    for part in [kind, __version__] + list(inputs):
        data = part.encode()
        h.update(len(data).to_bytes(8, "big"))
        h.update(data)
    return h.hexdigest()


class Cache:
    """A directory of ``<kind>-<digest>.json`` files; ``Cache(None)`` never stores anything."""

    def __init__(self, directory: str | os.PathLike | None):
        self.directory = Path(directory) if directory else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
            if not os.access(self.directory, os.W_OK):
                raise PermissionError(f"cache directory {self.directory} is not writable")

    def path(self, kind: str, inputs: list[str]) -> Path | None:
        if self.directory is None:
            return None
        return self.directory / f"{kind}-{digest(kind, inputs)}.json"

    def get(self, kind: str, inputs: list[str]) -> Any | None:
        p = self.path(kind, inputs)
        if p is None or not p.exists():
            return None
        try:
            return json.loads(p.read_text())
        except json.JSONDecodeError:
            return None

    def put(self, kind: str, inputs: list[str], value: Any) -> None:
        p = self.path(kind, inputs)
        if p is None:
            return
        fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(value, fh, sort_keys=True)
        os.replace(tmp, p)

    def fetch(self, kind: str, inputs: list[str], compute: Callable[[], Any]) -> Any:
        """Cached value, computing and storing it on a miss.

        The stored value goes through a JSON round trip on a miss as well,
        so hits and cold runs return identical data.
        """
        hit = self.get(kind, inputs)
        if hit is not None:
            return hit
        value = json.loads(json.dumps(compute()))
        self.put(kind, inputs, value)
        return value
