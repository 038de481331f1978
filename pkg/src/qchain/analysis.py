"""Flip-class histograms, top-k reports and baselines for sampled chains."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._validation import check_int, check_probabilities
from .ising import ChainSpec, flip, ground_states, to_bitstring


def canonical_class(config: int, n: int) -> int:
    """Representative of ``{config, flip(config)}``: the smaller of the two."""
    return min(int(config), flip(config, n))


@dataclass
class ConfigurationHistogram:
    """Sample counts keyed by flip-class representative (only observed classes)."""

    n_atoms: int
    counts: dict[int, int] = field(default_factory=dict)
    total_samples: int = 0

    def merge(self, other: "ConfigurationHistogram") -> "ConfigurationHistogram":
        if other.n_atoms != self.n_atoms:
            raise ValueError("cannot merge histograms of different chain lengths")
        merged = dict(self.counts)
        for key, c in other.counts.items():
            merged[key] = merged.get(key, 0) + c
        return ConfigurationHistogram(self.n_atoms, merged, self.total_samples + other.total_samples)


def histogram(counts, n: int) -> ConfigurationHistogram:
    """Fold per-configuration counts into flip classes."""
    counts = np.asarray(counts)
    n = check_int(n, "n", minimum=1)
    if counts.shape != (1 << n,):
        raise ValueError(f"expected {1 << n} counts for n={n}, got shape {counts.shape}")
    counts = counts.astype(np.int64)
    # flip(z) = 2**n - 1 - z, so the lower half holds every representative
    half = 1 << (n - 1)
    folded = counts[:half] + counts[half:][::-1]
    keys = np.flatnonzero(folded)
    return ConfigurationHistogram(
        n, {int(k): int(folded[k]) for k in keys}, int(counts.sum())
    )


def top_k(hist: ConfigurationHistogram, k: int) -> list[tuple[int, int]]:
    """``k`` most frequent classes; ties go to the smaller representative."""
    k = check_int(k, "k", minimum=1)
    ranked = sorted(hist.counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


def uniform_baseline(n: int) -> Fraction:
    """Chance that a uniformly random configuration is one of the two aligned states."""
    n = check_int(n, "n", minimum=1)
    return Fraction(2, 2**n)


def ground_state_probability(probs, chain: ChainSpec) -> float:
    """Total probability on the exact ground states of ``chain``."""
    probs = check_probabilities(probs)
    if probs.shape[0] != chain.dimension:
        raise ValueError(f"expected {chain.dimension} probabilities, got {probs.shape[0]}")
    _, ground = ground_states(chain)
    return float(sum(probs[z] for z in sorted(ground)))


def sampled_energy(counts, table) -> float:
    """Mean energy of sampled configurations (for reporting only)."""
    counts = np.asarray(counts, dtype=np.int64)
    total = int(counts.sum())
    if total == 0:
        raise ValueError("no samples")
    return float(np.dot(counts, np.asarray(table, dtype=np.float64)) / total)


def histogram_csv(hist: ConfigurationHistogram, k: int | None = None) -> str:
    """CSV rows ``representative_bits,count,fraction`` in descending count.

    Bitstrings put atom 0 first.
    """
    rows = top_k(hist, k if k is not None else max(len(hist.counts), 1))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["representative_bits", "count", "fraction"])
    for rep, c in rows:
        writer.writerow([to_bitstring(rep, hist.n_atoms), c, repr(c / hist.total_samples)])
    return buf.getvalue()
