"""Shift/modulation unitaries and the d (x) d Bell basis.

Convention: |psi_km> = (Omega^k (x) I)(I (x) S^m)|psi_00>
                     = d^{-1/2} sum_l omega^{kl} |l, l+m mod d>
with omega = exp(2 pi i/d). Phases are always taken from a table of the d
roots of unity indexed mod d, never by repeated multiplication, so they do
not drift.
"""

import numpy as np

from .tensor_core import projector


def phase_root(d):
    """Primitive d-th root of unity exp(2 pi i / d)."""
    return np.exp(2j * np.pi / d)


def _phase_table(d):
    return np.exp(2j * np.pi * np.arange(d) / d)


def shift(d, m):
    """Cyclic shift power S^m, S^m|l> = |l+m mod d>. Unitary, S^d = I."""
    S = np.zeros((d, d), dtype=complex)
    cols = np.arange(d)
    S[(cols + m) % d, cols] = 1.0
    return S


def modulation(d, k):
    """Diagonal phase power Omega^k, Omega^k|l> = omega^{kl}|l>."""
    w = _phase_table(d)
    return np.diag(w[(k * np.arange(d)) % d])


def fourier_matrix(d):
    """Discrete Fourier unitary F[j,l] = omega^{jl} / sqrt(d)."""
    j = np.arange(d)
    return np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def bell_state(d, k, m):
    """Amplitude vector of |psi_km>, unit norm, d nonzero entries."""
    if not (0 <= k < d and 0 <= m < d):
        raise ValueError(f"Bell index ({k},{m}) out of range for d={d}")
    w = _phase_table(d)
    v = np.zeros(d * d, dtype=complex)
    l = np.arange(d)
    v[l * d + (l + m) % d] = w[(k * l) % d] / np.sqrt(d)
    return v


def bell_projector(d, k, m):
    return projector(bell_state(d, k, m))


def bell_basis(d):
    """(d^2, d^2) array whose row k*d+m holds the amplitudes of |psi_km>."""
    B = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        for m in range(d):
            B[k * d + m] = bell_state(d, k, m)
    return B


def bell_projector_pt(d):
    """Partial transpose of |psi_00><psi_00| assembled in the Bell basis.

    Returns (1/d) sum_{m,l} omega^{ml} |psi_{m,l}><psi_{m,d-l}|, which equals
    the direct left partial transpose of the projector (and is SWAP/d in the
    product basis).
    """
    w = _phase_table(d)
    out = np.zeros((d * d, d * d), dtype=complex)
    for m in range(d):
        for l in range(d):
            ket = bell_state(d, m, l)
            bra = bell_state(d, m, (d - l) % d)
            out += w[(m * l) % d] * np.outer(ket, np.conj(bra))
    return out / d
