"""Content-addressed cache of exact distributions.

Entries are immutable JSON files named by the SHA-256 of the request key.
Each entry stores a digest of its coefficients, checked on every read.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Optional

from .qpoly import QPolynomial

ENV_VAR = "COLPERM_CACHE_DIR"
log = logging.getLogger(__name__)


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


class DistributionCache:
    def __init__(self, root: os.PathLike | str):
        self.root = Path(root)

    @classmethod
    def from_env(cls) -> Optional["DistributionCache"]:
        root = os.environ.get(ENV_VAR)
        return cls(root) if root else None

    def path(self, key: dict) -> Path:
        return self.root / f"{_digest(key)}.json"

    def get(self, key: dict) -> Optional[QPolynomial]:
        p = self.path(key)
        if not p.exists():
            return None
        try:
            entry = json.loads(p.read_text())
        except (OSError, json.JSONDecodeError):
            log.warning("unreadable cache entry %s", p)
            return None
        coeffs = entry.get("coefficients")
        if entry.get("key") != key or entry.get("sha256") != _digest(coeffs):
            log.warning("cache entry %s failed its hash check; ignoring", p)
            return None
        return QPolynomial(int(a) for a in coeffs)

    def put(self, key: dict, poly: QPolynomial) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        coeffs = [str(a) for a in poly.coeffs]
        p = self.path(key)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": key, "coefficients": coeffs, "sha256": _digest(coeffs)},
                                  sort_keys=True))
        tmp.replace(p)
        return p
