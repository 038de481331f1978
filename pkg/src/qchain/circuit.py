"""Gate-level form of the ring QAOA circuit.

Each ZZ bond term is realised as CNOT, Rz, CNOT. The gate simulator here is
deliberately naive (dense single- and two-qubit updates) and shares no code
with :mod:`qchain.statevector`, so the two can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import MAX_CIRCUIT_QUBITS, check_cap, check_int
from .ising import ChainSpec, edges
from .statevector import QaoaParameters

GATE_KINDS = {"h": 1, "x": 1, "cx": 2, "rz": 1, "rx": 1}
_PARAMETRIC = {"rz", "rx"}


@dataclass(frozen=True)
class Gate:
    """One gate. Rz(t) = diag(e^{-it/2}, e^{it/2}) and Rx(t) = exp(-i t X / 2).

    For ``cx`` the qubits are ``(control, target)``.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(self.qubits) != GATE_KINDS[self.kind]:
            raise ValueError(f"{self.kind} acts on {GATE_KINDS[self.kind]} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("control and target must differ")
        if (self.angle is None) == (self.kind in _PARAMETRIC):
            raise ValueError(f"{self.kind} gate angle mismatch: {self.angle!r}")
        if self.angle is not None:
            object.__setattr__(self, "angle", float(self.angle))


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        check_int(self.n_qubits, "n_qubits", minimum=1)
        for g in self.gates:
            self._check(g)

    def _check(self, gate: Gate) -> None:
        if any(q < 0 or q >= self.n_qubits for q in gate.qubits):
            raise ValueError(f"gate {gate} outside a {self.n_qubits}-qubit register")

    def append(self, gate: Gate) -> None:
        self._check(gate)
        self.gates.append(gate)

    def extend(self, gates) -> None:
        for g in gates:
            self.append(g)

    def __len__(self) -> int:
        return len(self.gates)


def zz_block(i: int, j: int, gamma: float, coupling: float = 1.0) -> list[Gate]:
    """Gates equal to ``exp(-i gamma (-J) Z_i Z_j)``, with no leftover global phase."""
    if i == j:
        raise ValueError("zz_block needs two distinct qubits")
    theta = 2.0 * gamma * (-coupling)
    return [Gate("cx", (i, j)), Gate("rz", (j,), theta), Gate("cx", (i, j))]


def build_qaoa_circuit(chain: ChainSpec, params: QaoaParameters) -> Circuit:
    n = chain.n_atoms
    bonds = edges(chain)
    if params.per_edge and params.gammas.shape[1] != len(bonds):
        raise ValueError(f"per-edge gammas need {len(bonds)} columns")
    circ = Circuit(n)
    circ.extend(Gate("h", (q,)) for q in range(n))
    for k in range(params.p):
        for e, (i, j) in enumerate(bonds):
            gamma = params.gammas[k, e] if params.per_edge else params.gammas[k]
            circ.extend(zz_block(i, j, gamma, chain.coupling))
        circ.extend(Gate("rx", (q,), 2.0 * params.betas[k]) for q in range(n))
    return circ


def gate_matrix(gate: Gate) -> np.ndarray:
    """Unitary of a single-qubit gate, or of ``cx`` in (control, target) basis order."""
    if gate.kind == "h":
        return np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    if gate.kind == "x":
        return np.array([[0, 1], [1, 0]], dtype=np.complex128)
    if gate.kind == "rz":
        t = gate.angle / 2
        return np.diag([np.exp(-1j * t), np.exp(1j * t)])
    if gate.kind == "rx":
        c, s = np.cos(gate.angle / 2), np.sin(gate.angle / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128)


def _apply(psi: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    # tensor axis a holds qubit n - 1 - a (qubit 0 is the least significant bit)
    axes = [n - 1 - q for q in gate.qubits]
    k = len(axes)
    mat = gate_matrix(gate).reshape((2,) * (2 * k))
    psi = np.tensordot(mat, psi, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(psi, list(range(k)), axes)


def simulate_circuit(circuit: Circuit, cap: int = MAX_CIRCUIT_QUBITS) -> np.ndarray:
    """Run the circuit on ``|0...0>`` and return the final state vector."""
    n = circuit.n_qubits
    check_cap(n, cap, "simulate_circuit")
    psi = np.zeros((2,) * n, dtype=np.complex128)
    psi[(0,) * n] = 1.0
    for gate in circuit.gates:
        psi = _apply(psi, gate, n)
    return psi.reshape(-1)


def export_qasm(circuit: Circuit) -> str:
    """OpenQASM 2.0 text, one statement per line in execution order."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.n_qubits}];"]
    for g in circuit.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.angle is None:
            lines.append(f"{g.kind} {args};")
        else:
            lines.append(f"{g.kind}({g.angle:.17g}) {args};")
    return "\n".join(lines) + "\n"
