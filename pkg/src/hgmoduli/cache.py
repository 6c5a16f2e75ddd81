"""Memo store for computed cells and its JSON cache file.

Keys are ``ModuliKey`` tuples serialized as ``"r:k:KIND:n:d"``.  Values are
either an LPoly or a series component ``{partition: LPoly}``.  Entries are
write-once: a second write of a different value for the same key is an
internal error.

File layout::

    {"version": "1", "entries": {"2:4:M_BAR:0:2": {"poly": [...]}, ...}}

with every rational written as ``{"num": "<int>", "den": "<int>"}``.
"""

from __future__ import annotations

import fcntl
import json
import os
import threading
from contextlib import contextmanager
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from .errors import CacheCorrupt, InternalInconsistency
from .exactring import LPoly

CACHE_VERSION = "1"
ENV_VAR = "HG_MODULI_CACHE"


class Kind(str, Enum):
    QBAR = "QBAR"
    Q = "Q"
    OMEGA = "OMEGA"
    MHO = "MHO"
    M_OPEN = "M_OPEN"
    PHI_BAR = "PHI_BAR"
    M_BAR = "M_BAR"
    CONFIG = "CONFIG"


class ModuliKey(NamedTuple):
    r: int
    k: int
    kind: Kind
    n: int
    d: int

    def serialize(self):
        return f"{self.r}:{self.k}:{self.kind.value}:{self.n}:{self.d}"

    @classmethod
    def parse(cls, text):
        r, k, kind, n, d = text.split(":")
        return cls(int(r), int(k), Kind(kind), int(n), int(d))


# -- JSON encoding of exact values ----------------------------------------

def rat_to_json(x):
    x = Fraction(x)
    return {"den": str(x.denominator), "num": str(x.numerator)}


def rat_from_json(obj):
    return Fraction(int(obj["num"]), int(obj["den"]))


def poly_to_json(p):
    return [rat_to_json(c) for c in p.coeffs]


def poly_from_json(arr):
    return LPoly([rat_from_json(c) for c in arr])


def component_to_json(comp):
    items = sorted(comp.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    return [{"coeff": poly_to_json(c), "partition": list(lam)} for lam, c in items]


def component_from_json(arr):
    return {tuple(t["partition"]): poly_from_json(t["coeff"]) for t in arr}


def value_to_json(value):
    if isinstance(value, LPoly):
        return {"poly": poly_to_json(value)}
    return {"component": component_to_json(value)}


def value_from_json(obj):
    if "poly" in obj:
        return poly_from_json(obj["poly"])
    return component_from_json(obj["component"])


def default_cache_path():
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "hgmoduli", "cache.json")


class MemoStore:
    """Thread-safe write-once map from ModuliKey to exact values."""

    def __init__(self):
        self._data = {}
        self._lock = threading.Lock()
        self.dirty = False

    def __contains__(self, key):
        return key in self._data

    def __len__(self):
        return len(self._data)

    def get(self, key, default=None):
        return self._data.get(key, default)

    def put(self, key, value):
        with self._lock:
            old = self._data.get(key)
            if old is None:
                self._data[key] = value
                self.dirty = True
            elif old != value:
                raise InternalInconsistency(f"conflicting values for {key.serialize()}")

    def keys(self):
        return list(self._data)

    def clear(self):
        with self._lock:
            self._data.clear()
            self.dirty = True

    # -- persistence -----------------------------------------------------

    def to_json(self):
        entries = {k.serialize(): value_to_json(v) for k, v in self._data.items()}
        return {"entries": entries, "version": CACHE_VERSION}

    def load_json(self, doc):
        """Merge a parsed cache document; returns False on version mismatch."""
        if not isinstance(doc, dict) or "version" not in doc:
            raise CacheCorrupt("cache document lacks a version field")
        if doc["version"] != CACHE_VERSION:
            return False
        entries = doc.get("entries")
        if not isinstance(entries, dict):
            raise CacheCorrupt("cache entries must be an object")
        parsed = {}
        try:
            for k, v in entries.items():
                parsed[ModuliKey.parse(k)] = value_from_json(v)
        except (KeyError, ValueError, TypeError, AttributeError) as exc:
            raise CacheCorrupt(f"malformed cache entry: {exc}") from exc
        for k, v in parsed.items():
            self.put(k, v)
        return True


@contextmanager
def _locked(path, mode):
    with open(path, mode, encoding="utf-8") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX if "w" in mode or "+" in mode else fcntl.LOCK_SH)
        try:
            yield fh
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def load_store(path, store=None):
    """Read the cache file into ``store`` (created if omitted).

    A missing file or one with a different version gives an empty store;
    unparsable content raises CacheCorrupt.
    """
    store = MemoStore() if store is None else store
    if not os.path.exists(path):
        return store
    with _locked(path, "r") as fh:
        text = fh.read()
    if not text.strip():
        return store
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheCorrupt(f"{path}: {exc}") from exc
    store.load_json(doc)
    store.dirty = False
    return store


def save_store(store, path):
    """Merge ``store`` into the file at ``path`` under an exclusive lock."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with _locked(path, "a+") as fh:
        fh.seek(0)
        text = fh.read()
        if text.strip():
            try:
                store.load_json(json.loads(text))
            except (json.JSONDecodeError, CacheCorrupt):
                pass  # rewritten below
        fh.seek(0)
        fh.truncate()
        json.dump(store.to_json(), fh, sort_keys=True, separators=(",", ":"))
    store.dirty = False
