"""Seeded, counter-based random generators."""

from __future__ import annotations

import numpy as np


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """Philox generator for ``seed``; identical seeds give identical streams."""
    return np.random.Generator(np.random.Philox(seed))


def shard_rngs(seed: int, shards: int) -> list[np.random.Generator]:
    """Independent generators for ``shards`` parallel workers, in shard order."""
    children = np.random.SeedSequence(seed).spawn(shards)
    return [make_rng(child) for child in children]
