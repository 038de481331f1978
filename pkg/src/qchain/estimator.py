"""scikit-learn style front end for the ring QAOA solver."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import analysis
from ._validation import MAX_STATE_QUBITS, check_cap, check_int
from .ising import ChainSpec, ground_states
from .optimizer import AdamConfig, train_best
from .sampling import sample
from .statevector import QaoaParameters, QaoaSimulator


def _resolve_seed(random_state) -> int:
    if random_state is None:
        return int(np.random.SeedSequence().generate_state(1)[0])
    return check_int(random_state, "random_state", minimum=0)


class QaoaChainSolver(BaseEstimator):
    """Find ground-state configurations of a ferromagnetic Ising ring with QAOA.

    The problem instance is fully described by the hyper-parameters, so
    ``fit`` takes no data; ``X`` and ``y`` are accepted and ignored for
    pipeline compatibility.

    Parameters
    ----------
    n_atoms : int, default=12
        Ring length (3 to 26).
    coupling : float, default=1.0
        Exchange constant J; positive is ferromagnetic.
    layers : int, default=10
        QAOA depth p. The circuit has 2p trainable angles in shared mode.
    epochs : int, default=125
        Number of Adam steps.
    learning_rate, beta1, beta2, epsilon : float
        Adam hyper-parameters.
    per_edge : bool, default=False
        Give every bond its own cost angle in each layer.
    n_seeds : int, default=1
        Independent trainings with seeds ``random_state + i``; the lowest
        final energy wins.
    random_state : int or None, default=None
        Base seed. ``None`` draws one from OS entropy (stored in ``seed_``).

    Attributes
    ----------
    params_ : QaoaParameters
    trace_ : TrainingTrace
        Trace of the winning seed.
    traces_ : list of TrainingTrace
    seed_ : int
        Seed of the winning run.
    """

    def __init__(
        self,
        n_atoms=12,
        coupling=1.0,
        layers=10,
        epochs=125,
        learning_rate=0.01,
        beta1=0.9,
        beta2=0.999,
        epsilon=1e-8,
        per_edge=False,
        n_seeds=1,
        random_state=None,
    ):
        self.n_atoms = n_atoms
        self.coupling = coupling
        self.layers = layers
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.per_edge = per_edge
        self.n_seeds = n_seeds
        self.random_state = random_state

    def _validate(self):
        chain = ChainSpec(self.n_atoms, self.coupling)
        check_cap(chain.n_atoms, MAX_STATE_QUBITS, "QaoaChainSolver")
        check_int(self.layers, "layers", minimum=0)
        check_int(self.n_seeds, "n_seeds", minimum=1)
        cfg = AdamConfig(self.learning_rate, self.beta1, self.beta2, self.epsilon, self.epochs)
        return chain, cfg

    def fit(self, X=None, y=None):
        chain, cfg = self._validate()
        base = _resolve_seed(self.random_state)
        best, traces = train_best(
            chain, self.layers, cfg, seeds=[base + i for i in range(self.n_seeds)], per_edge=self.per_edge
        )
        self.chain_ = chain
        self.trace_ = best
        self.traces_ = traces
        self.seed_ = best.seed
        self.params_ = best.final_params
        self.simulator_ = QaoaSimulator(chain)
        return self

    def state(self) -> np.ndarray:
        """Final state vector of the trained circuit."""
        check_is_fitted(self, "params_")
        return self.simulator_.state(self.params_)

    def predict_proba(self, X=None) -> np.ndarray:
        """Measurement probabilities over all ``2**n_atoms`` configurations."""
        check_is_fitted(self, "params_")
        return self.simulator_.probabilities(self.params_)

    def energy(self) -> float:
        check_is_fitted(self, "params_")
        return self.simulator_.expectation(self.params_)

    def sample(self, n_samples: int, random_state=None, n_workers: int = 1) -> np.ndarray:
        """Per-configuration counts of ``n_samples`` draws from the trained circuit.

        ``random_state`` defaults to the winning training seed.
        """
        check_is_fitted(self, "params_")
        seed = self.seed_ if random_state is None else _resolve_seed(random_state)
        return sample(self.predict_proba(), n_samples, seed, n_workers=n_workers)

    def sample_histogram(self, n_samples: int, random_state=None, n_workers: int = 1):
        counts = self.sample(n_samples, random_state, n_workers)
        return analysis.histogram(counts, self.chain_.n_atoms)

    def score(self, X=None, y=None) -> float:
        """Ground-state probability of the trained distribution."""
        return analysis.ground_state_probability(self.predict_proba(), self.chain_)

    def ground_states(self):
        """Exact ``(energy, configurations)`` of the chain by exhaustive search."""
        chain, _ = self._validate()
        return ground_states(chain)

    def set_trained_parameters(self, params: QaoaParameters):
        """Load angles without training, e.g. from a saved trace."""
        chain, _ = self._validate()
        self.chain_ = chain
        self.simulator_ = QaoaSimulator(chain)
        self.params_ = params
        self.seed_ = _resolve_seed(self.random_state)
        return self
