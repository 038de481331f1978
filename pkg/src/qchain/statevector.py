"""Dense state-vector simulation of the ring QAOA circuit.

The public layer functions work on arbitrary full state vectors. Training
goes through :class:`QaoaSimulator`, which exploits the fact that every
QAOA state on the ring is invariant under a global spin flip: it keeps only
the amplitudes with the highest bit cleared, since
``psi[z | top] == psi[flip(z | top)]`` lives in the stored half.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from ._validation import (
    MAX_STATE_QUBITS,
    check_cap,
    check_int,
    check_same_length,
    check_state,
)
from .ising import ChainSpec, bond_signs, domain_walls


@dataclass
class QaoaParameters:
    """Cost angles ``gammas`` and mixer angles ``betas`` for ``p`` layers.

    ``gammas`` has shape ``(p,)`` in the default shared mode, or
    ``(p, n_edges)`` when every bond gets its own angle.
    """

    gammas: np.ndarray
    betas: np.ndarray

    def __post_init__(self):
        self.gammas = np.array(self.gammas, dtype=np.float64)
        self.betas = np.array(self.betas, dtype=np.float64).reshape(-1)
        if self.gammas.ndim == 1 and self.gammas.size == 0:
            self.gammas = self.gammas.reshape(0)
        if self.gammas.ndim not in (1, 2) or self.gammas.shape[0] != self.betas.shape[0]:
            raise ValueError(
                f"gammas {self.gammas.shape} and betas {self.betas.shape} disagree on the layer count"
            )
        if not (np.all(np.isfinite(self.gammas)) and np.all(np.isfinite(self.betas))):
            raise ValueError("QAOA angles must be finite")

    @property
    def p(self) -> int:
        return self.betas.shape[0]

    @property
    def per_edge(self) -> bool:
        return self.gammas.ndim == 2

    @property
    def size(self) -> int:
        return self.gammas.size + self.betas.size

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.gammas.reshape(-1), self.betas])

    @classmethod
    def from_vector(cls, vec, p: int, n_edges: int | None = None) -> "QaoaParameters":
        vec = np.asarray(vec, dtype=np.float64)
        n_gamma = p if n_edges is None else p * n_edges
        if vec.shape != (n_gamma + p,):
            raise ValueError(f"expected {n_gamma + p} parameters, got shape {vec.shape}")
        gammas = vec[:n_gamma]
        if n_edges is not None:
            gammas = gammas.reshape(p, n_edges)
        return cls(gammas, vec[n_gamma:])


@dataclass
class Gradient:
    d_gammas: np.ndarray
    d_betas: np.ndarray

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.d_gammas.reshape(-1), self.d_betas])


def init_uniform(n: int, cap: int = MAX_STATE_QUBITS) -> np.ndarray:
    """Equal superposition of all ``2**n`` basis states."""
    n = check_int(n, "n", minimum=1)
    check_cap(n, cap, "init_uniform")
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128)


def apply_cost_layer(state, table, gamma: float) -> np.ndarray:
    """Return ``exp(-i gamma H) |state>`` for a diagonal ``H`` given by ``table``."""
    state, _ = check_state(state)
    table = np.asarray(table, dtype=np.float64)
    check_same_length(state, table, "apply_cost_layer")
    return state * np.exp(-1j * float(gamma) * table)


def apply_mixer_layer(state, beta: float) -> np.ndarray:
    """Return ``exp(-i beta sum_q X_q) |state>``, i.e. ``Rx(2 beta)`` on every qubit."""
    state, n = check_state(state)
    out = np.array(state, dtype=np.complex128, copy=True)
    K.rx_all(K.as_pairs(out), n, np.cos(beta), np.sin(beta))
    return out


def probabilities(state) -> np.ndarray:
    state, _ = check_state(state)
    return state.real**2 + state.imag**2


def expectation(state, table) -> float:
    """``sum_z |state[z]|**2 * table[z]``, accumulated in ascending ``z``."""
    state, _ = check_state(state)
    table = np.ascontiguousarray(table, dtype=np.float64)
    check_same_length(state, table, "expectation")
    return float(K.weighted_norm(K.as_pairs(np.ascontiguousarray(state)), table))


class QaoaSimulator:
    """Flip-symmetric QAOA engine bound to one chain.

    Parameters
    ----------
    chain : ChainSpec
        Ring instance; its energy levels are precomputed once.
    cap : int
        Largest supported ring size.
    """

    def __init__(self, chain: ChainSpec, cap: int = MAX_STATE_QUBITS):
        check_cap(chain.n_atoms, cap, "QaoaSimulator")
        self.chain = chain
        n = chain.n_atoms
        self.n_edges = n
        self._half = 1 << (n - 1)
        self._levels = domain_walls(chain, self._half)
        # energy of each domain-wall count w: -J (n - 2w)
        self._level_energy = -chain.coupling * (n - 2.0 * np.arange(n + 1))
        self._energies = self._level_energy[self._levels]
        self._bonds = None

    def _bond_energies(self) -> np.ndarray:
        # per-bond energy -J S_i S_j, only needed in per-edge mode
        if self._bonds is None:
            self._bonds = -self.chain.coupling * bond_signs(self.chain, self._half).astype(np.float64)
        return self._bonds

    def _check(self, params: QaoaParameters) -> None:
        if params.per_edge and params.gammas.shape[1] != self.n_edges:
            raise ValueError(
                f"per-edge gammas need {self.n_edges} columns, got {params.gammas.shape[1]}"
            )

    def _cost(self, v: np.ndarray, gamma) -> None:
        if np.ndim(gamma) == 0:
            theta = -float(gamma) * self._level_energy
            K.phase_lookup(K.as_pairs(v), self._levels, np.cos(theta), np.sin(theta))
        else:
            v *= np.exp(-1j * (np.asarray(gamma) @ self._bond_energies()))

    def _mix(self, v: np.ndarray, beta: float) -> None:
        c, s = np.cos(beta), np.sin(beta)
        pairs = K.as_pairs(v)
        K.rx_all(pairs, self.chain.n_atoms - 1, c, s)
        K.rx_reflected(pairs, c, s)

    def evolve_half(self, params: QaoaParameters) -> np.ndarray:
        """Final state restricted to configurations with the top bit cleared."""
        self._check(params)
        v = np.full(self._half, 2.0 ** (-self.chain.n_atoms / 2), dtype=np.complex128)
        for k in range(params.p):
            self._cost(v, params.gammas[k])
            self._mix(v, params.betas[k])
        return v

    def state(self, params: QaoaParameters) -> np.ndarray:
        """Full ``2**n`` state vector."""
        half = self.evolve_half(params)
        # psi[top | z] = psi[flip] = half[N/2 - 1 - z]
        return np.concatenate([half, half[::-1]])

    def probabilities(self, params: QaoaParameters) -> np.ndarray:
        return probabilities(self.state(params))

    def expectation(self, params: QaoaParameters) -> float:
        half = self.evolve_half(params)
        return 2.0 * float(K.weighted_norm(K.as_pairs(half), self._energies))

    def value_and_grad(self, params: QaoaParameters) -> tuple[float, Gradient]:
        """Energy expectation and its exact gradient by a reverse (adjoint) sweep.

        The forward state is uncomputed layer by layer instead of being
        stored, so memory stays at two state vectors for any depth.
        """
        psi = self.evolve_half(params)
        n = self.chain.n_atoms
        energy = 2.0 * float(K.weighted_norm(K.as_pairs(psi), self._energies))
        lam = psi * self._energies
        d_gammas = np.zeros_like(params.gammas)
        d_betas = np.zeros_like(params.betas)
        for k in range(params.p - 1, -1, -1):
            # d/dtheta <H> = 2 Im <lam|G|psi> over the full space = 4 Im(...) over the half
            _, im = K.x_overlap(K.as_pairs(lam), K.as_pairs(psi), n - 1, True)
            d_betas[k] = 4.0 * im
            self._mix(psi, -params.betas[k])
            self._mix(lam, -params.betas[k])
            if params.per_edge:
                w = (np.conj(lam) * psi).imag
                d_gammas[k] = 4.0 * (self._bond_energies() @ w)
            else:
                _, im = K.weighted_overlap(K.as_pairs(lam), K.as_pairs(psi), self._energies)
                d_gammas[k] = 4.0 * im
            self._cost(psi, -params.gammas[k])
            self._cost(lam, -params.gammas[k])
        return energy, Gradient(d_gammas, d_betas)


def run_qaoa(chain: ChainSpec, params: QaoaParameters) -> np.ndarray:
    """Uniform start, then ``p`` rounds of cost layer followed by mixer layer."""
    return QaoaSimulator(chain).state(params)


def gradient(chain: ChainSpec, params: QaoaParameters) -> Gradient:
    """Exact gradient of the energy expectation with respect to all angles."""
    return QaoaSimulator(chain).value_and_grad(params)[1]
