"""Independent oracles shared by the test modules.

None of these helpers call into the fast half-storage engine; they rebuild
the physics from dense matrices or explicit spin loops.
"""

import itertools

import numpy as np
import pytest
import scipy.linalg

from qchain.statevector import apply_cost_layer, apply_mixer_layer, expectation, init_uniform

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Z = np.diag([1.0, -1.0])


def op_on(single, q, n):
    """Embed a one-qubit operator on qubit ``q`` (qubit 0 = least significant bit)."""
    return np.kron(np.kron(np.eye(1 << (n - 1 - q)), single), np.eye(1 << q))


def brute_energies(n, coupling=1.0):
    """Ring energies from explicit spin tuples, indexed like the package."""
    out = np.empty(1 << n)
    for bits in itertools.product((0, 1), repeat=n):
        z = sum(b << i for i, b in enumerate(bits))
        s = [1 - 2 * b for b in bits]
        out[z] = -coupling * sum(s[i] * s[(i + 1) % n] for i in range(n))
    return out


def dense_hamiltonian(n, coupling=1.0):
    h = np.zeros((1 << n, 1 << n))
    for i in range(n):
        h -= coupling * op_on(PAULI_Z, i, n) @ op_on(PAULI_Z, (i + 1) % n, n)
    return h


def dense_qaoa(n, gammas, betas, coupling=1.0):
    """QAOA state from explicit 2^n x 2^n matrix exponentials."""
    h = dense_hamiltonian(n, coupling)
    b = sum(op_on(PAULI_X, q, n) for q in range(n))
    psi = np.full(1 << n, 2 ** (-n / 2), dtype=complex)
    for g, be in zip(gammas, betas):
        psi = scipy.linalg.expm(-1j * be * b) @ (scipy.linalg.expm(-1j * g * h) @ psi)
    return psi


def layered_energy(table, gammas, betas):
    """Energy expectation through the full-storage public layer functions."""
    n = int(np.log2(len(table)))
    psi = init_uniform(n)
    for g, b in zip(gammas, betas):
        psi = apply_mixer_layer(apply_cost_layer(psi, table, g), b)
    return expectation(psi, table)


def central_differences(f, x, eps=1e-5):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    for i in range(x.size):
        d = np.zeros_like(x)
        d[i] = eps
        out[i] = (f(x + d) - f(x - d)) / (2 * eps)
    return out


def overlap(a, b):
    """|<a|b>| for normalised states; global-phase insensitive."""
    return abs(np.vdot(a, b))


def phase_aligned_error(a, b):
    """max |a - e^{i phi} b| with phi chosen to align the two states."""
    ip = np.vdot(b, a)
    phase = ip / abs(ip)
    return float(np.max(np.abs(a - phase * b)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
