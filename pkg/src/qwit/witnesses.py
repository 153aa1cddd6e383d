"""Bell-diagonal witness constructions.

Covers the diagonal-convolution positive map, the witnesses it induces (built
two independent ways, directly from the separable families and through the
channel-state isomorphism), the reduction witness, and the generic
Bell-diagonal form with a white-noise weight r and a probability table q.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NormalizationError
from .qudit_basis import bell_basis, bell_projector
from .state_families import separable_set1, separable_set2

_WITNESS_KINDS = ("first", "second")


@dataclass(frozen=True)
class ChoiParams:
    """Weight vector a and flavor of a diagonal-convolution witness.

    Args:
        d: local dimension.
        a: d nonnegative weights (a_0, ..., a_{d-1}).
        kind: "first" pairs the weights with the product-diagonal family,
            "second" with the phase-indexed one.
        normalized: divide by d*(sum(a) - 1) so the witness has unit trace.
    """

    d: int
    a: tuple
    kind: str = "first"
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        if len(self.a) != self.d:
            raise DimensionError(f"need {self.d} weights, got {len(self.a)}")
        if any(x < 0 for x in self.a):
            raise ValueError("weights must be nonnegative")
        if self.kind not in _WITNESS_KINDS:
            raise ValueError(f"kind must be one of {_WITNESS_KINDS}")
        if self.normalized and self.a_sum <= 1.0:
            raise NormalizationError(
                f"normalization needs sum(a) > 1, got {self.a_sum!r}"
            )

    @property
    def a_sum(self):
        return float(sum(self.a))

    @property
    def a_min(self):
        return float(min(self.a))

    @property
    def prefactor(self):
        """Scale applied when normalized: 1 / (d (sum(a) - 1))."""
        return 1.0 / (self.d * (self.a_sum - 1.0))


def choi_map_apply(params, rho):
    """Apply the map rho -> D(rho) - rho with D_mm = sum_j a_{(j-m) mod d} rho_jj.

    Linear on arbitrary (not necessarily Hermitian) d x d matrices, which is
    what the channel-state assembly below feeds it. Only the first flavor is
    a map; the second exists as a witness alone.
    """
    if params.kind != "first":
        raise ValueError("only the first-kind map is defined")
    rho = np.asarray(rho, dtype=complex)
    d = params.d
    if rho.shape != (d, d):
        raise DimensionError(f"expected a {d} x {d} matrix, got {rho.shape}")
    a = np.asarray(params.a)
    j = np.arange(d)
    conv = a[(j[None, :] - j[:, None]) % d]  # conv[m, j] = a_{(j-m) mod d}
    return np.diag(conv @ np.diag(rho)) - rho


def choi_witness(params):
    """sum_m a_m rho_m - d |psi_00><psi_00|, optionally trace-normalized.

    rho_m is the product-diagonal family member for kind "first" and the
    phase-indexed one for kind "second". Hermitian and Bell-diagonal.
    """
    d = params.d
    base = separable_set1 if params.kind == "first" else separable_set2
    W = -d * bell_projector(d, 0, 0)
    for m, weight in enumerate(params.a):
        W = W + weight * base(d, m)
    if params.normalized:
        W = params.prefactor * W
    return W


def jamiolkowski_witness(params):
    """The same witness assembled through the channel-state isomorphism.

    Applies the map to the first factor of d |psi_00><psi_00| slice by slice.
    Kept as an independent construction route; tests pin it against
    choi_witness entrywise.
    """
    if params.kind != "first":
        raise ValueError("the isomorphism route needs the first-kind map")
    d = params.d
    X = (d * bell_projector(d, 0, 0)).reshape(d, d, d, d)
    Y = np.empty_like(X)
    for u in range(d):
        for v in range(d):
            Y[:, u, :, v] = choi_map_apply(
                ChoiParams(d=d, a=params.a, kind="first"), X[:, u, :, v]
            )
    W = Y.reshape(d * d, d * d)
    if params.normalized:
        W = params.prefactor * W
    return W


def reduction_witness(d):
    """I - d |psi_00><psi_00|: the all-ones weight vector, unnormalized."""
    return np.eye(d * d, dtype=complex) - d * bell_projector(d, 0, 0)


@dataclass(frozen=True)
class BDEWParams:
    """White-noise weight r <= 0 and Bell probability table q (d x d, sums to 1)."""

    d: int
    r: float
    q: np.ndarray = field(repr=False)

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", float(self.r))
        if q.shape != (self.d, self.d):
            raise DimensionError(f"q must be {self.d} x {self.d}, got {q.shape}")
        if self.r > 0.0:
            raise ValueError(f"r must be <= 0, got {self.r}")
        if q.min() < -1e-12:
            raise ValueError("q entries must be nonnegative")
        if abs(q.sum() - 1.0) > 1e-12:
            raise NormalizationError(f"q sums to {q.sum()!r}, expected 1")


def bdew_assemble(params):
    """r I/d^2 + (1 - r) sum_{km} q_km |psi_km><psi_km|; trace 1."""
    d = params.d
    B = bell_basis(d)
    qflat = params.q.reshape(-1)
    W = (B.T * qflat) @ np.conj(B)
    return (params.r / (d * d)) * np.eye(d * d, dtype=complex) + (1.0 - params.r) * W


def bell_diagonal_coeffs(W, d):
    """Diagonal Bell-basis coefficients <psi_km|W|psi_km> as a (k, m) table."""
    W = np.asarray(W, dtype=complex)
    if W.shape != (d * d, d * d):
        raise DimensionError(f"expected {d * d} x {d * d}, got {W.shape}")
    B = bell_basis(d)
    c = np.einsum("si,ij,sj->s", np.conj(B), W, B)
    return c.real.reshape(d, d)


def bdew_from_witness(W, d):
    """Recover (r, q) of the Bell-diagonal form from a trace-1 witness.

    Gauge: the smallest Bell coefficient is assigned entirely to the white
    noise term, so the matching q entry is zero. A PSD input (all coefficients
    nonnegative) comes back with r = 0.
    """
    c = bell_diagonal_coeffs(W, d)
    total = float(np.trace(np.asarray(W)).real)
    if abs(total - 1.0) > 1e-9:
        raise NormalizationError(f"witness trace {total!r}, expected 1")
    r = min(d * d * float(c.min()), 0.0)
    q = (c - r / (d * d)) / (1.0 - r)
    q = np.where(np.abs(q) < 1e-15, 0.0, q)
    return BDEWParams(d=d, r=r, q=q / q.sum())


def necessary_ew_check(params):
    """sum(a) >= d, the block-positivity test on the uniform-phase product pair.

    False means that pair already has a negative expectation value, so the
    operator cannot be a witness.
    """
    return params.a_sum >= params.d - 1e-12


def probe_product_pair(d, kind="first"):
    """Product pair (alpha, beta) with witness expectation (sum(a) - d) / d.

    For the first kind that is the uniform-phase pair (alpha_l = omega^l /
    sqrt(d), beta = conj(alpha)); for the second kind a matched computational
    pair |0>, |0> does the same job. The expectation is on the unnormalized
    witness; it is what the necessary check above thresholds.
    """
    if kind == "first":
        alpha = np.exp(2j * np.pi * np.arange(d) / d) / np.sqrt(d)
        return alpha, np.conj(alpha)
    e0 = np.zeros(d, dtype=complex)
    e0[0] = 1.0
    return e0, e0.copy()
