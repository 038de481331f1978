"""Seeded alias-table sampling of configuration counts.

Draws are split into fixed-size shards. Shard ``i`` uses a Philox stream
keyed by ``(seed, i)``, so the merged counts depend only on the seed and
never on how many workers processed the shards.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from ._validation import check_int, check_probabilities

SHARD_SIZE = 1 << 20


@dataclass(frozen=True)
class AliasTable:
    accept: np.ndarray
    alias: np.ndarray

    @classmethod
    def from_probabilities(cls, probs) -> "AliasTable":
        probs = check_probabilities(probs)
        accept, alias = K.build_alias(probs / math.fsum(probs))
        return cls(accept, alias)

    @property
    def size(self) -> int:
        return self.accept.shape[0]

    def draw(self, rng: np.random.Generator, count: int) -> np.ndarray:
        idx = rng.integers(0, self.size, size=count)
        u = rng.random(count)
        return np.where(u < self.accept[idx], idx, self.alias[idx])


def shard_rng(seed: int, shard: int) -> np.random.Generator:
    """Independent counter-based stream for one sampling shard."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(0x5A, shard))))


def sample(probs, count: int, seed: int, n_workers: int = 1, shard_size: int = SHARD_SIZE) -> np.ndarray:
    """Draw ``count`` configurations from ``probs`` and return per-configuration counts.

    Args:
        probs: probabilities over all configurations; must sum to 1 within 1e-6.
        count: number of draws.
        seed: non-negative integer seed.
        n_workers: threads used for shards; the result does not depend on it.
        shard_size: draws per shard. Changing it changes the random streams.

    Returns:
        int64 array of the same length as ``probs`` summing to ``count``.
    """
    count = check_int(count, "count", minimum=0)
    seed = check_int(seed, "seed", minimum=0)
    n_workers = check_int(n_workers, "n_workers", minimum=1)
    table = AliasTable.from_probabilities(probs)
    counts = np.zeros(table.size, dtype=np.int64)
    n_shards = -(-count // shard_size)

    def run_shard(shard: int) -> np.ndarray:
        m = min(shard_size, count - shard * shard_size)
        draws = table.draw(shard_rng(seed, shard), m)
        return np.bincount(draws, minlength=table.size)

    if n_workers == 1:
        for shard in range(n_shards):
            counts += run_shard(shard)
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            for part in pool.map(run_shard, range(n_shards)):
                counts += part
    return counts
