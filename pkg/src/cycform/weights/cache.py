"""Append-only weight cache.

One record per line, tab-separated, field order fixed:
graph encoding, method tag, samples, seed, value, stderr, timestamp (UTC).
Floats are written with repr (shortest round-trip, locale-independent).
"""

from __future__ import annotations

import os
import threading
from datetime import datetime, timezone
from pathlib import Path

from ..graphs import ShoikhetGraph
from .integrate import IntegrationSpec, WeightEstimate, compute_weight

CacheKey = tuple[str, str, int, int]


class CacheError(RuntimeError):
    """Cache file corruption; the message names the offending line."""


class WeightCache:
    """Thread-safe writer/reader for the append-only cache file."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._entries: dict[CacheKey, WeightEstimate] = {}
        self.hits = 0
        self.misses = 0
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        with open(self.path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                fields = line.split("\t")
                if len(fields) != 7:
                    raise CacheError(
                        f"{self.path}: line {lineno}: expected 7 fields, got {len(fields)}"
                    )
                enc, method, samples, seed, value, stderr, _timestamp = fields
                try:
                    est = WeightEstimate(
                        value=float(value),
                        stderr=float(stderr),
                        samples=int(samples),
                        seed=int(seed),
                        method=method,
                        graph=enc,
                    )
                except ValueError as exc:
                    raise CacheError(f"{self.path}: line {lineno}: {exc}") from exc
                self._entries[(enc, method, est.samples, est.seed)] = est

    def get(self, key: CacheKey) -> WeightEstimate | None:
        return self._entries.get(key)

    def put(self, est: WeightEstimate) -> None:
        key = (est.graph, est.method, est.samples, est.seed)
        with self._lock:
            if key in self._entries:
                return
            self._entries[key] = est
            stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
            line = "\t".join(
                [
                    est.graph,
                    est.method,
                    str(est.samples),
                    str(est.seed),
                    repr(est.value),
                    repr(est.stderr),
                    stamp,
                ]
            )
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def stats(self) -> dict[str, int]:
        return {"hits": self.hits, "misses": self.misses, "entries": len(self._entries)}


def weight_cache_get_or_compute(
    graph: ShoikhetGraph, spec: IntegrationSpec, store: WeightCache
) -> WeightEstimate:
    """Cached weight lookup keyed on (encoding, method tag, samples, seed);
    computes and appends on a miss."""
    key = (graph.encode(), spec.method_tag(), _samples_field(spec), spec.seed)
    found = store.get(key)
    if found is not None:
        store.hits += 1
        return found
    store.misses += 1
    est = compute_weight(graph, spec)
    # exact short-circuits report 0 samples; key them as computed
    est = WeightEstimate(
        est.value, est.stderr, _samples_field(spec), spec.seed, spec.method_tag(),
        est.graph, est.rejected,
    )
    store.put(est)
    return est


def _samples_field(spec: IntegrationSpec) -> int:
    return spec.mesh if spec.method == "quadrature" else spec.samples
