"""Content-addressed on-disk store for expensive reports.

Keys are sha256 digests of a canonical JSON serialization of (kind, inputs,
tool version).  Each entry embeds a checksum of its body; an entry whose
checksum does not match is treated as missing and rewritten.  Writes go
through a temporary file and ``os.replace`` so concurrent identical inserts
are harmless.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable, List, Optional

from . import __version__

ENV_VAR = "GC_CACHE_DIR"


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def cache_key(kind: str, inputs: Any) -> str:
    doc = {"kind": kind, "inputs": inputs, "version": __version__}
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def _checksum(body: str) -> str:
    return hashlib.sha256(body.encode()).hexdigest()


class Cache:
    """Store rooted at ``root`` (or $GC_CACHE_DIR); ``root=None`` without the env var disables disk use."""

    def __init__(self, root: Optional[os.PathLike] = None):
        if root is None:
            root = os.environ.get(ENV_VAR) or None
        self.root = Path(root) if root else None
        self.keys_used: List[str] = []
        self.hits = 0
        self.misses = 0
        self.corrupt = 0

    @property
    def enabled(self) -> bool:
        return self.root is not None

    def path(self, key: str) -> Path:
        assert self.root is not None
        return self.root / key[:2] / f"{key}.json"

    def contains(self, kind: str, inputs: Any) -> bool:
        return self._read(cache_key(kind, inputs)) is not None

    def _read(self, key: str):
        if not self.enabled:
            return None
        p = self.path(key)
        try:
            doc = json.loads(p.read_text())
            body = doc["body"]
            if doc.get("key") != key or doc.get("checksum") != _checksum(canonical_json(body)):
                raise ValueError("checksum mismatch")
            return body
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, TypeError):
            self.corrupt += 1
            return None

    def _write(self, key: str, body: Any) -> None:
        if not self.enabled:
            return
        p = self.path(key)
        p.parent.mkdir(parents=True, exist_ok=True)
        doc = {"key": key, "checksum": _checksum(canonical_json(body)), "body": body}
        fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(canonical_json(doc))
        os.replace(tmp, p)

    def get(self, kind: str, inputs: Any):
        return self._read(cache_key(kind, inputs))

    def put(self, kind: str, inputs: Any, body: Any) -> str:
        key = cache_key(kind, inputs)
        self._write(key, body)
        return key

    def fetch(self, kind: str, inputs: Any, compute: Callable[[], Any],
              dump: Callable[[Any], Any] = lambda x: x, load: Callable[[Any], Any] = lambda x: x):
        """Cached value of ``compute()``; the key is recorded in ``keys_used`` either way."""
        key = cache_key(kind, inputs)
        if key not in self.keys_used:
            self.keys_used.append(key)
        body = self._read(key)
        if body is not None:
            self.hits += 1
            return load(body)
        self.misses += 1
        value = compute()
        body = dump(value)
        self._write(key, body)
        # round-trip so cold and warm runs see the same object
        return load(json.loads(canonical_json(body)))
