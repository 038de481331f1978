"""Compiled inner loops over state vectors.

Every kernel takes complex vectors as float64 views of shape ``(N, 2)``
(real, imag) and runs serially in ascending index order, so repeated calls
are bit-identical.
"""

from __future__ import annotations

import numba
import numpy as np


def as_pairs(state: np.ndarray) -> np.ndarray:
    """Float64 ``(N, 2)`` view of a contiguous complex128 vector (no copy)."""
    return state.view(np.float64).reshape(-1, 2)


@numba.njit(cache=True)
def rx_all(v, n_qubits, c, s):
    """Apply ``exp(-i b X)`` to qubits ``0..n_qubits-1`` in place (c = cos b, s = sin b)."""
    size = v.shape[0]
    for q in range(n_qubits):
        st = 1 << q
        for b0 in range(0, size, 2 * st):
            for z0 in range(b0, b0 + st):
                z1 = z0 + st
                ar = v[z0, 0]
                ai = v[z0, 1]
                br = v[z1, 0]
                bi = v[z1, 1]
                v[z0, 0] = c * ar + s * bi
                v[z0, 1] = c * ai - s * br
                v[z1, 0] = c * br + s * ai
                v[z1, 1] = c * bi - s * ar


@numba.njit(cache=True)
def rx_reflected(v, c, s):
    """Rotation pairing ``z`` with ``N - 1 - z``.

    On a flip-symmetric state stored as its lower half, this is the action
    of the rotation on the highest qubit.
    """
    size = v.shape[0]
    for z0 in range(size // 2):
        z1 = size - 1 - z0
        ar = v[z0, 0]
        ai = v[z0, 1]
        br = v[z1, 0]
        bi = v[z1, 1]
        v[z0, 0] = c * ar + s * bi
        v[z0, 1] = c * ai - s * br
        v[z1, 0] = c * br + s * ai
        v[z1, 1] = c * bi - s * ar


@numba.njit(cache=True)
def phase_lookup(v, levels, cos_t, sin_t):
    """``v[z] *= exp(i t[levels[z]])`` in place, phases given as cos/sin tables."""
    for z in range(v.shape[0]):
        k = levels[z]
        cr = cos_t[k]
        ci = sin_t[k]
        ar = v[z, 0]
        ai = v[z, 1]
        v[z, 0] = cr * ar - ci * ai
        v[z, 1] = cr * ai + ci * ar


@numba.njit(cache=True)
def weighted_norm(v, weights):
    """Sum of ``|v[z]|**2 * weights[z]``."""
    acc = 0.0
    for z in range(v.shape[0]):
        acc += (v[z, 0] * v[z, 0] + v[z, 1] * v[z, 1]) * weights[z]
    return acc


@numba.njit(cache=True)
def weighted_overlap(lam, v, weights):
    """Real and imaginary parts of ``sum conj(lam[z]) * v[z] * weights[z]``."""
    re = 0.0
    im = 0.0
    for z in range(v.shape[0]):
        w = weights[z]
        re += (lam[z, 0] * v[z, 0] + lam[z, 1] * v[z, 1]) * w
        im += (lam[z, 0] * v[z, 1] - lam[z, 1] * v[z, 0]) * w
    return re, im


@numba.njit(cache=True)
def x_overlap(lam, v, n_qubits, reflected):
    """Real and imaginary parts of ``<lam| sum_q X_q |v>``.

    Covers qubits ``0..n_qubits-1``; with ``reflected`` also the
    ``z <-> N - 1 - z`` pairing used by the half-stored symmetric state.
    """
    size = v.shape[0]
    re = 0.0
    im = 0.0
    for q in range(n_qubits):
        st = 1 << q
        for b0 in range(0, size, 2 * st):
            for z0 in range(b0, b0 + st):
                z1 = z0 + st
                re += lam[z0, 0] * v[z1, 0] + lam[z0, 1] * v[z1, 1]
                im += lam[z0, 0] * v[z1, 1] - lam[z0, 1] * v[z1, 0]
                re += lam[z1, 0] * v[z0, 0] + lam[z1, 1] * v[z0, 1]
                im += lam[z1, 0] * v[z0, 1] - lam[z1, 1] * v[z0, 0]
    if reflected:
        for z0 in range(size // 2):
            z1 = size - 1 - z0
            re += lam[z0, 0] * v[z1, 0] + lam[z0, 1] * v[z1, 1]
            im += lam[z0, 0] * v[z1, 1] - lam[z0, 1] * v[z1, 0]
            re += lam[z1, 0] * v[z0, 0] + lam[z1, 1] * v[z0, 1]
            im += lam[z1, 0] * v[z0, 1] - lam[z1, 1] * v[z0, 0]
    return re, im


@numba.njit(cache=True)
def build_alias(probs):
    """Vose alias table for a normalised probability vector."""
    size = probs.shape[0]
    accept = np.ones(size)
    alias = np.arange(size)
    scaled = probs * size
    small = np.empty(size, dtype=np.int64)
    large = np.empty(size, dtype=np.int64)
    ns = 0
    nl = 0
    for i in range(size):
        if scaled[i] < 1.0:
            small[ns] = i
            ns += 1
        else:
            large[nl] = i
            nl += 1
    while ns > 0 and nl > 0:
        ns -= 1
        s = small[ns]
        nl -= 1
        g = large[nl]
        accept[s] = scaled[s]
        alias[s] = g
        scaled[g] = (scaled[g] + scaled[s]) - 1.0
        if scaled[g] < 1.0:
            small[ns] = g
            ns += 1
        else:
            large[nl] = g
            nl += 1
    # leftovers carry mass ~1 up to rounding and keep accept = 1
    return accept, alias
