"""QAOA search for ground-state spin configurations of a ferromagnetic Ising ring."""

from .analysis import (
    ConfigurationHistogram,
    canonical_class,
    ground_state_probability,
    histogram,
    top_k,
    uniform_baseline,
)
from .circuit import Circuit, Gate, build_qaoa_circuit, export_qasm, simulate_circuit, zz_block
from .estimator import QaoaChainSolver
from .ising import ChainSpec, edges, energy, energy_table, ground_states
from .optimizer import AdamConfig, AdamState, TrainingTrace, adam_step, init_parameters, train
from .sampling import sample
from .statevector import (
    Gradient,
    QaoaParameters,
    QaoaSimulator,
    apply_cost_layer,
    apply_mixer_layer,
    expectation,
    gradient,
    init_uniform,
    probabilities,
    run_qaoa,
)

__version__ = "0.1.0"
