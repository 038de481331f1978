"""Input validation shared by the public entry points."""

from __future__ import annotations

import math
from numbers import Integral

import numpy as np

MAX_STATE_QUBITS = 26
MAX_ORACLE_ATOMS = 24
MAX_CIRCUIT_QUBITS = 12


class CapExceededError(ValueError):
    """Raised when a request would exceed a configured memory/resource cap."""


def check_int(value, name: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceededError(f"{what}: {n} qubits/atoms exceeds the cap of {cap}")


def check_finite_nonzero(value, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value == 0.0:
        raise ValueError(f"{name} must be finite and nonzero, got {value}")
    return value


def check_state(state) -> tuple[np.ndarray, int]:
    """Return ``state`` as a complex128 array and its qubit count."""
    state = np.asarray(state, dtype=np.complex128)
    if state.ndim != 1 or state.size < 2 or state.size & (state.size - 1):
        raise ValueError(f"state length must be a power of two >= 2, got shape {state.shape}")
    return state, state.size.bit_length() - 1


def check_same_length(a: np.ndarray, b: np.ndarray, what: str) -> None:
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"{what}: length mismatch ({a.shape[0]} vs {b.shape[0]})")


def check_probabilities(probs, tol: float = 1e-6) -> np.ndarray:
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 1 or probs.size == 0:
        raise ValueError("probabilities must be a non-empty 1-D array")
    if not np.all(np.isfinite(probs)) or np.any(probs < 0):
        raise ValueError("probabilities must be finite and non-negative")
    total = math.fsum(probs)
    if abs(total - 1.0) > tol:
        raise ValueError(f"probabilities sum to {total!r}, expected 1 within {tol}")
    return probs
