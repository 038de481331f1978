"""Nearest-neighbour Ising ring: problem instance, energies and exact oracles.

Spin configurations are plain integers. Bit ``i`` set means atom ``i`` points
down (S_i = -1); a cleared bit means up (S_i = +1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import (
    MAX_ORACLE_ATOMS,
    MAX_STATE_QUBITS,
    check_cap,
    check_finite_nonzero,
    check_int,
)

BOUNDARIES = ("periodic",)


@dataclass(frozen=True)
class ChainSpec:
    """A ring of ``n_atoms`` magnetic moments with uniform exchange ``coupling``.

    Positive coupling is ferromagnetic. Energies are reported in the same
    units as ``coupling``.
    """

    n_atoms: int
    coupling: float = 1.0
    boundary: str = "periodic"

    def __post_init__(self):
        n = check_int(self.n_atoms, "n_atoms")
        if n < 3:
            raise ValueError(f"a ring needs at least 3 atoms, got n_atoms={n}")
        object.__setattr__(self, "n_atoms", n)
        object.__setattr__(self, "coupling", check_finite_nonzero(self.coupling, "coupling"))
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"unsupported boundary {self.boundary!r}; only 'periodic' is available")

    @property
    def dimension(self) -> int:
        return 1 << self.n_atoms


def edges(chain: ChainSpec) -> list[tuple[int, int]]:
    """Ring bonds ``(i, (i + 1) % n)``, each listed once, ascending in ``i``."""
    n = chain.n_atoms
    return [(i, (i + 1) % n) for i in range(n)]


def spins(config: int, n: int) -> np.ndarray:
    """Spin values (+1/-1) of ``config`` as an int8 array indexed by atom."""
    bits = (int(config) >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int8)


def flip(config: int, n: int) -> int:
    """Global spin flip: complement the low ``n`` bits."""
    return int(config) ^ ((1 << n) - 1)


def rotate(config: int, r: int, n: int) -> int:
    """Cyclically shift atom labels by ``r`` (atom i moves to i + r mod n)."""
    r %= n
    mask = (1 << n) - 1
    config = int(config)
    return ((config << r) | (config >> (n - r))) & mask


def to_bitstring(config: int, n: int) -> str:
    """Render ``config`` with atom 0 as the leftmost character."""
    return "".join("1" if (int(config) >> i) & 1 else "0" for i in range(n))


def from_bitstring(bits: str) -> int:
    """Inverse of :func:`to_bitstring`."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"not a bitstring: {bits!r}")
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


def energy(chain: ChainSpec, config: int) -> float:
    """E(z) = -J * sum over ring bonds of S_i * S_j."""
    config = check_int(config, "config", minimum=0)
    if config >= chain.dimension:
        raise ValueError(f"config {config} out of range for {chain.n_atoms} atoms")
    s = spins(config, chain.n_atoms)
    return -chain.coupling * float(sum(int(s[i]) * int(s[j]) for i, j in edges(chain)))


def bond_signs(chain: ChainSpec, dimension: int | None = None) -> np.ndarray:
    """``S_i * S_j`` per ring bond for the first ``dimension`` configurations.

    Shape ``(n_edges, dimension)``, dtype int8.
    """
    dim = chain.dimension if dimension is None else dimension
    z = np.arange(dim, dtype=np.int64)
    out = np.empty((chain.n_atoms, dim), dtype=np.int8)
    for k, (i, j) in enumerate(edges(chain)):
        out[k] = 1 - 2 * (((z >> i) ^ (z >> j)) & 1)
    return out


def domain_walls(chain: ChainSpec, dimension: int | None = None) -> np.ndarray:
    """Number of anti-aligned bonds for the first ``dimension`` configurations (uint8)."""
    dim = chain.dimension if dimension is None else dimension
    z = np.arange(dim, dtype=np.int64)
    walls = np.zeros(dim, dtype=np.uint8)
    for i, j in edges(chain):
        walls += (((z >> i) ^ (z >> j)) & 1).astype(np.uint8)
    return walls


def energy_table(chain: ChainSpec, cap: int = MAX_STATE_QUBITS) -> np.ndarray:
    """Energies of all ``2**n`` configurations, indexed by configuration.

    The ring energy only depends on the domain-wall count ``w``:
    E = -J * (n - 2w).
    """
    check_cap(chain.n_atoms, cap, "energy_table")
    walls = domain_walls(chain)
    return -chain.coupling * (chain.n_atoms - 2.0 * walls)


def ground_states(chain: ChainSpec, cap: int = MAX_ORACLE_ATOMS) -> tuple[float, frozenset[int]]:
    """Exhaustive scan for the minimum energy and every configuration attaining it."""
    check_cap(chain.n_atoms, cap, "ground_states")
    table = energy_table(chain, cap=cap)
    e_min = table.min()
    return float(e_min), frozenset(int(z) for z in np.flatnonzero(table == e_min))
