"""Dense complex linear algebra on small bipartite Hilbert spaces.

Operators are plain numpy arrays (complex, square, row-major); nothing in this
module knows about Bell states or witnesses. Composite systems use the index
convention i*d_right + k for |i>|k>, stated here once and used everywhere.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, HermiticityError


@dataclass(frozen=True)
class Tolerance:
    """Numerical floors for positivity and equality checks."""

    psd_eps: float = 1e-9
    eq_eps: float = 1e-12

    def __post_init__(self):
        if self.psd_eps < 0 or self.eq_eps < 0:
            raise ValueError("tolerances must be nonnegative")


DEFAULT_TOL = Tolerance()


def dagger(M):
    return np.conj(np.asarray(M).T)


def projector(v):
    """|v><v| for a 1-D amplitude vector."""
    v = np.asarray(v, dtype=complex)
    return np.outer(v, np.conj(v))


def frobenius(M):
    return float(np.linalg.norm(np.asarray(M)))


def kron(A, B):
    """Tensor product; row index of the result is i*dim(B) + k for |i>|k>."""
    return np.kron(np.asarray(A), np.asarray(B))


def partial_transpose(M, d_left, d_right, side="left"):
    """Transpose one tensor factor of an operator on C^d_left (x) C^d_right.

    Parameters
    ----------
    M : (d_left*d_right, d_left*d_right) array
    side : "left" maps entry ((i,k),(j,l)) to ((j,k),(i,l)); "right"
        transposes the second factor instead.

    The map is an involution and preserves the trace.
    """
    M = np.asarray(M)
    n = d_left * d_right
    if M.shape != (n, n):
        raise DimensionError(
            f"operator has shape {M.shape}, expected {(n, n)} for a "
            f"{d_left} x {d_right} system"
        )
    blocks = M.reshape(d_left, d_right, d_left, d_right)
    if side == "left":
        out = blocks.transpose(2, 1, 0, 3)
    elif side == "right":
        out = blocks.transpose(0, 3, 2, 1)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return out.reshape(n, n)


def _check_hermitian(M, eq_eps):
    dev = float(np.max(np.abs(M - dagger(M))))
    if dev > eq_eps * max(1.0, frobenius(M)):
        raise HermiticityError(f"max |M - M^dag| = {dev:.3e}")


def herm_eigvals(M, tol=DEFAULT_TOL):
    """Ascending real eigenvalues of a Hermitian matrix.

    Raises HermiticityError if M is not Hermitian within
    eq_eps * max(1, ||M||_F).
    """
    M = np.asarray(M)
    _check_hermitian(M, tol.eq_eps)
    return np.linalg.eigvalsh(M)


def min_eig(M, tol=DEFAULT_TOL):
    return float(herm_eigvals(M, tol)[0])


def is_psd(M, tol=DEFAULT_TOL):
    """True iff the minimum eigenvalue is >= -psd_eps * max(1, ||M||_F)."""
    M = np.asarray(M)
    return min_eig(M, tol) >= -tol.psd_eps * max(1.0, frobenius(M))
