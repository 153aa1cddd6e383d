"""Reference see-saw kernel in plain numpy.

Alternating minimization of <alpha beta| W |alpha beta> over product pairs:
fixing one side makes the problem a d x d Hermitian minimum-eigenvector
computation for the other, so the value never increases. The compiled twin in
_seesaw_ext implements the same loop; _backend picks whichever is available.
"""

import numpy as np


def _normalize(v):
    v = np.asarray(v, dtype=complex).reshape(-1)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("zero start vector")
    return v / n


def _min_eigpair(H):
    vals, vecs = np.linalg.eigh(H)
    return float(vals[0]), np.ascontiguousarray(vecs[:, 0])


def seesaw_run(W4, alpha, beta, iters=200, tol=1e-12):
    """Run the alternation from one start pair.

    W4 is the witness reshaped to (d, d, d, d) with axes (left-row,
    right-row, left-col, right-col). Returns (value, alpha, beta) at the
    fixed point, value being the exact product expectation for the returned
    pair.
    """
    W4 = np.asarray(W4, dtype=complex)
    d = W4.shape[0]
    if W4.shape != (d, d, d, d):
        raise ValueError(f"expected a rank-4 cube, got {W4.shape}")
    alpha = _normalize(alpha)
    beta = _normalize(beta)

    value = None
    for _ in range(max(1, iters)):
        MB = np.einsum("u,uivj,v->ij", np.conj(alpha), W4, alpha)
        MB = 0.5 * (MB + np.conj(MB.T))
        _, beta = _min_eigpair(MB)
        MA = np.einsum("i,uivj,j->uv", np.conj(beta), W4, beta)
        MA = 0.5 * (MA + np.conj(MA.T))
        val, alpha = _min_eigpair(MA)
        if value is not None and abs(value - val) <= tol:
            value = val
            break
        value = val
    return value, alpha, beta
