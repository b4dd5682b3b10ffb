"""Shared plumbing: canonical JSON, deterministic RNG substreams, provenance."""

from __future__ import annotations

import hashlib
import json
from typing import Any

import numpy as np

#: Bump when any artifact schema changes incompatibly.
ARTIFACT_VERSION = 1


def canonical_dumps(obj: Any) -> str:
    """Serialize to JSON with a stable key order and no whitespace.

    Identical inputs produce identical bytes, which is what makes model
    files, tables and snapshots byte-reproducible across runs.
    """
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def config_hash(obj: Any) -> str:
    """Short SHA-256 of the canonical JSON form of a config object."""
    payload = canonical_dumps(obj).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()[:16]


def provenance(seed: int, config: Any) -> dict:
    """The {version, seed, config_hash} block embedded in every artifact."""
    return {
        "version": ARTIFACT_VERSION,
        "seed": int(seed),
        "config_hash": config_hash(config),
    }


def substream(seed: int, stream: int) -> np.random.Generator:
    """Independent counter-based RNG stream for (seed, stream).

    Philox is counter-based, so distinct stream ids give statistically
    independent sequences that do not depend on draw order elsewhere;
    per-tree / per-class work stays deterministic under parallel scheduling.
    """
    return np.random.Generator(np.random.Philox(key=(int(seed) & _MASK64) + ((int(stream) & _MASK64) << 64)))


_MASK64 = (1 << 64) - 1
