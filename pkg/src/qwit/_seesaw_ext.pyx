# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled see-saw kernel.

Same alternation as the numpy reference, with the inner d x d Hermitian
minimum-eigenvector step done by a cyclic complex Jacobi sweep instead of
LAPACK. Matrices here are tiny (d is a qudit dimension), where sweep cost is
negligible and avoiding per-call allocation pays off across many restarts.
"""

import numpy as np

cimport cython
from libc.math cimport fabs, sqrt


@cython.boundscheck(False)
@cython.wraparound(False)
cdef int _jacobi_min(double complex[:, ::1] A, double complex[:, ::1] V,
                     int d, double* out_val, double complex[::1] out_vec) except -1:
    """Diagonalize Hermitian A in place, eigenvectors accumulated in V.

    Writes the smallest eigenvalue and its vector into the out arguments.
    """
    cdef int p, q, r, sweep, best
    cdef double off, a, b, az, tau, t, c, s, best_val, floor
    cdef double complex z, phase, xp, xq

    # convergence floor scales with the matrix, or the final sweeps stall
    # just above any fixed cutoff and the loop never exits early
    floor = 0.0
    for p in range(d):
        for q in range(d):
            floor += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
    floor *= 1e-30

    for p in range(d):
        for q in range(d):
            V[p, q] = 1.0 + 0j if p == q else 0.0 + 0j

    for sweep in range(60):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                off += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
        if off <= floor:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                z = A[p, q]
                az = sqrt(z.real * z.real + z.imag * z.imag)
                if az == 0.0:
                    continue
                a = A[p, p].real
                b = A[q, q].real
                tau = (b - a) / (2.0 * az)
                if tau >= 0.0:
                    t = tau - sqrt(1.0 + tau * tau)
                else:
                    t = tau + sqrt(1.0 + tau * tau)
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                phase = z / az
                # columns: A <- A U with U = [[c, -s*phase], [s*conj(phase), c]]
                for r in range(d):
                    xp = A[r, p]
                    xq = A[r, q]
                    A[r, p] = c * xp + s * phase.conjugate() * xq
                    A[r, q] = -s * phase * xp + c * xq
                # rows: A <- U^dag A
                for r in range(d):
                    xp = A[p, r]
                    xq = A[q, r]
                    A[p, r] = c * xp + s * phase * xq
                    A[q, r] = -s * phase.conjugate() * xp + c * xq
                # the rotation annihilates this pair exactly; drop the roundoff
                A[p, q] = 0
                A[q, p] = 0
                for r in range(d):
                    xp = V[r, p]
                    xq = V[r, q]
                    V[r, p] = c * xp + s * phase.conjugate() * xq
                    V[r, q] = -s * phase * xp + c * xq

    best = 0
    best_val = A[0, 0].real
    for p in range(1, d):
        if A[p, p].real < best_val:
            best_val = A[p, p].real
            best = p
    out_val[0] = best_val
    for r in range(d):
        out_vec[r] = V[r, best]
    return 0


@cython.boundscheck(False)
@cython.wraparound(False)
cdef void _contract_left(double complex[:, :, :, ::1] W4, double complex[::1] vec,
                         double complex[:, ::1] out, int d) noexcept:
    """out[i, j] = sum_{u,v} conj(vec_u) W4[u,i,v,j] vec_v."""
    cdef int u, i, v, j
    cdef double complex acc, cu
    for i in range(d):
        for j in range(d):
            acc = 0
            for u in range(d):
                cu = vec[u].conjugate()
                for v in range(d):
                    acc += cu * W4[u, i, v, j] * vec[v]
            out[i, j] = acc


@cython.boundscheck(False)
@cython.wraparound(False)
cdef void _contract_right(double complex[:, :, :, ::1] W4, double complex[::1] vec,
                          double complex[:, ::1] out, int d) noexcept:
    """out[u, v] = sum_{i,j} conj(vec_i) W4[u,i,v,j] vec_j."""
    cdef int u, i, v, j
    cdef double complex acc, ci
    for u in range(d):
        for v in range(d):
            acc = 0
            for i in range(d):
                ci = vec[i].conjugate()
                for j in range(d):
                    acc += ci * W4[u, i, v, j] * vec[j]
            out[u, v] = acc


def jacobi_eigh_min(H):
    """Smallest eigenpair of a Hermitian matrix via the sweep above.

    Exposed for the cross-check tests against numpy.linalg.eigh.
    """
    A = np.array(H, dtype=np.complex128, order="C")
    d = A.shape[0]
    V = np.empty((d, d), dtype=np.complex128, order="C")
    vec = np.empty(d, dtype=np.complex128)
    cdef double val = 0.0
    _jacobi_min(A, V, d, &val, vec)
    return val, vec


def seesaw_run(W4, alpha, beta, int iters=200, double tol=1e-12):
    """Compiled twin of the numpy see-saw; same contract, same returns."""
    cdef double complex[:, :, :, ::1] W = np.ascontiguousarray(W4, dtype=np.complex128)
    cdef int d = W.shape[0]
    if W.shape[1] != d or W.shape[2] != d or W.shape[3] != d:
        raise ValueError("expected a rank-4 cube")

    a = np.asarray(alpha, dtype=np.complex128).reshape(-1).copy()
    b = np.asarray(beta, dtype=np.complex128).reshape(-1).copy()
    if a.shape[0] != d or b.shape[0] != d:
        raise ValueError("start vectors must have length d")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ValueError("zero start vector")
    a /= na
    b /= nb

    M = np.empty((d, d), dtype=np.complex128, order="C")
    V = np.empty((d, d), dtype=np.complex128, order="C")
    cdef double complex[:, ::1] Mv = M
    cdef double complex[:, ::1] Vv = V
    cdef double complex[::1] av = a
    cdef double complex[::1] bv = b
    cdef double val = 0.0, prev = 0.0
    cdef int it, have_prev = 0

    for it in range(max(1, iters)):
        _contract_left(W, av, Mv, d)
        _jacobi_min(Mv, Vv, d, &val, bv)
        _contract_right(W, bv, Mv, d)
        _jacobi_min(Mv, Vv, d, &val, av)
        if have_prev and fabs(prev - val) <= tol:
            prev = val
            break
        prev = val
        have_prev = 1
    return prev, a, b
