"""Adam training of the QAOA angles on the exact energy expectation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_int
from .ising import ChainSpec
from .statevector import QaoaParameters, QaoaSimulator

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class AdamConfig:
    learning_rate: float = 0.01
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    epochs: int = 125

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if not (0 < self.beta1 < 1 and 0 < self.beta2 < 1):
            raise ValueError("beta1 and beta2 must lie in (0, 1)")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        check_int(self.epochs, "epochs", minimum=0)


@dataclass(frozen=True)
class AdamState:
    first_moment: np.ndarray
    second_moment: np.ndarray
    step: int = 0

    @classmethod
    def zeros(cls, size: int) -> "AdamState":
        return cls(np.zeros(size), np.zeros(size), 0)


def adam_step(params, grads, state: AdamState, cfg: AdamConfig) -> tuple[np.ndarray, AdamState]:
    """One bias-corrected Adam update. Inputs are not modified."""
    params = np.asarray(params, dtype=np.float64)
    grads = np.asarray(grads, dtype=np.float64)
    if not (params.shape == grads.shape == state.first_moment.shape):
        raise ValueError(
            f"shape mismatch: params {params.shape}, grads {grads.shape}, "
            f"moments {state.first_moment.shape}"
        )
    t = state.step + 1
    m = cfg.beta1 * state.first_moment + (1.0 - cfg.beta1) * grads
    v = cfg.beta2 * state.second_moment + (1.0 - cfg.beta2) * (grads * grads)
    m_hat = m / (1.0 - cfg.beta1**t)
    v_hat = v / (1.0 - cfg.beta2**t)
    new = params - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.epsilon)
    return new, AdamState(m, v, t)


def init_parameters(p: int, seed: int, n_edges: int | None = None) -> QaoaParameters:
    """Angles drawn uniformly from [0, 2*pi): all gammas first, then all betas."""
    p = check_int(p, "p", minimum=0)
    n_gamma = p if n_edges is None else p * n_edges
    values = np.random.default_rng(seed).uniform(0.0, TWO_PI, size=n_gamma + p)
    return QaoaParameters.from_vector(values, p, n_edges)


@dataclass
class TrainingTrace:
    """Energy after every epoch; record 0 is the untrained random start."""

    seed: int
    epochs: list[int] = field(default_factory=list)
    energies: list[float] = field(default_factory=list)
    snapshots: list[np.ndarray] | None = None
    final_params: QaoaParameters | None = None

    @property
    def final_energy(self) -> float:
        return self.energies[-1]

    def best_energies(self) -> np.ndarray:
        """Running minimum of the recorded energies."""
        return np.minimum.accumulate(np.asarray(self.energies))

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "records": [{"epoch": e, "energy": en} for e, en in zip(self.epochs, self.energies)],
            "final_gammas": self.final_params.gammas.tolist(),
            "final_betas": self.final_params.betas.tolist(),
        }


def train(
    chain: ChainSpec,
    p: int,
    cfg: AdamConfig | None = None,
    seed: int = 0,
    per_edge: bool = False,
    record_params: bool = False,
    simulator: QaoaSimulator | None = None,
) -> TrainingTrace:
    """Minimise the energy expectation with exactly ``cfg.epochs`` Adam steps."""
    cfg = AdamConfig() if cfg is None else cfg
    sim = QaoaSimulator(chain) if simulator is None else simulator
    n_edges = sim.n_edges if per_edge else None
    params = init_parameters(p, seed, n_edges)
    theta = params.to_vector()
    state = AdamState.zeros(theta.size)
    trace = TrainingTrace(seed=seed, snapshots=[] if record_params else None)

    for epoch in range(cfg.epochs + 1):
        params = QaoaParameters.from_vector(theta, p, n_edges)
        if epoch == cfg.epochs:
            energy, grad = sim.expectation(params), None
        else:
            energy, grad = sim.value_and_grad(params)
        trace.epochs.append(epoch)
        trace.energies.append(energy)
        if record_params:
            trace.snapshots.append(theta.copy())
        if grad is not None:
            theta, state = adam_step(theta, grad.to_vector(), state, cfg)

    trace.final_params = params
    return trace


def train_best(chain: ChainSpec, p: int, cfg: AdamConfig | None = None, seeds=(0,), per_edge: bool = False):
    """Train once per seed and return ``(best_trace, all_traces)``.

    Best means lowest final energy; ties go to the earlier seed.
    """
    sim = QaoaSimulator(chain)
    traces = [train(chain, p, cfg, s, per_edge=per_edge, simulator=sim) for s in seeds]
    if not traces:
        raise ValueError("at least one seed is required")
    best = min(range(len(traces)), key=lambda i: (traces[i].final_energy, i))
    return traces[best], traces


