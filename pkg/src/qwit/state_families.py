"""Bell-diagonal separable state families and the PPT probe states.

The three separable families are kept unnormalized at trace d, exactly as the
probe family consumes them (it divides by d itself). All members are PSD, PPT
and diagonal in the Bell basis.
"""

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .errors import AnalyticUnavailable, DimensionError, UnsupportedDimension
from .qudit_basis import bell_projector
from .tensor_core import herm_eigvals, kron, partial_transpose

_FAMILY_KINDS = ("set1", "set2", "set3")


@dataclass(frozen=True)
class SeparableFamily:
    """Descriptor for one member of the three separable families."""

    d: int
    kind: str
    index: int

    def __post_init__(self):
        object.__setattr__(self, "kind", str(self.kind).lower())
        if self.kind not in _FAMILY_KINDS:
            raise ValueError(f"kind must be one of {_FAMILY_KINDS}")
        if not 0 <= self.index < self.d:
            raise ValueError(f"index {self.index} out of range for d={self.d}")


def separable_set1(d, m):
    """sum_l |l, l+m><l, l+m|: diagonal in the product basis, trace d."""
    rho = np.zeros((d * d, d * d), dtype=complex)
    l = np.arange(d)
    idx = l * d + (l + m) % d
    rho[idx, idx] = 1.0
    return rho


def separable_set2(d, m):
    """sum_k |psi_mk><psi_mk| (fixed phase index m), trace d."""
    rho = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        rho += bell_projector(d, m, k)
    return rho


def separable_set3(d, n):
    """sum_k |psi_{nk mod d, k}><psi_{nk mod d, k}|, summed as written.

    For composite d with gcd(n, d) > 1 some projectors repeat and are summed
    again rather than deduplicated; the trace stays d either way.
    """
    rho = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        rho += bell_projector(d, (n * k) % d, k)
    return rho


_BUILDERS = {"set1": separable_set1, "set2": separable_set2, "set3": separable_set3}


def separable_state(family):
    """Assemble the member described by a SeparableFamily."""
    return _BUILDERS[family.kind](family.d, family.index)


def local_orbit(family, left_op, right_op):
    """(U (x) V) rho (U (x) V)^dag of a family member.

    Preserves trace, positivity and separability by construction. Both
    operators must be d x d unitaries.
    """
    left = np.asarray(left_op, dtype=complex)
    right = np.asarray(right_op, dtype=complex)
    d = family.d
    if left.shape != (d, d) or right.shape != (d, d):
        raise DimensionError(
            f"local operators must be {d} x {d}, got {left.shape} and {right.shape}"
        )
    rho = separable_state(family)
    U = kron(left, right)
    return U @ rho @ np.conj(U.T)


@dataclass(frozen=True)
class PPTFamilyParams:
    """Mixing weight p and weights mu for the PPT probe family."""

    d: int
    p: float
    mu: tuple
    kind: str = "first"

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(float(x) for x in self.mu))
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} outside [0, 1]")
        if len(self.mu) != self.d - 1:
            raise DimensionError(f"need {self.d - 1} weights, got {len(self.mu)}")
        if any(x < 0 for x in self.mu):
            raise ValueError("weights must be nonnegative")
        if abs(sum(self.mu) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {sum(self.mu)!r}, expected 1")
        if self.kind not in ("first", "second"):
            raise ValueError("kind must be 'first' or 'second'")
        if self.kind == "second" and self.d != 3:
            raise UnsupportedDimension("second-kind probe family exists for d=3 only")


def ppt_state(params):
    """p |psi_00><psi_00| + ((1-p)/d) sum_i mu_i rho_i; unit trace, PSD, PPT
    for p up to the family threshold.

    kind="first" mixes in the product-diagonal family, kind="second" (d=3)
    the phase-indexed one.
    """
    d = params.d
    base = separable_set1 if params.kind == "first" else separable_set2
    rho = params.p * bell_projector(d, 0, 0)
    for i, w in enumerate(params.mu, start=1):
        if w:
            rho = rho + ((1.0 - params.p) / d) * w * base(d, i)
    return rho


PPTThreshold = namedtuple("PPTThreshold", ["p", "bracketed"])


def ppt_threshold_numeric(d, mu, kind="first", tol=1e-9, steps=60):
    """Largest p keeping the partial transpose of ppt_state PSD, by bisection.

    The minimum eigenvalue of the partial transpose is concave in p (it is the
    pointwise minimum of affine functions of p), so with a nonnegative value
    at p=0 there is a single sign change; bisection on the sign is sound. Runs
    `steps` halvings or until the bracket is narrower than `tol`. If even p=1
    stays PSD there is nothing to bracket and (1.0, False) is returned.
    """

    def min_pt_eig(p):
        rho = ppt_state(PPTFamilyParams(d=d, p=p, mu=tuple(mu), kind=kind))
        return float(herm_eigvals(partial_transpose(rho, d, d, "left"))[0])

    if min_pt_eig(1.0) >= 0.0:
        return PPTThreshold(1.0, False)
    assert min_pt_eig(0.0) >= -1e-12, "probe family must be PPT at p=0"
    lo, hi = 0.0, 1.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if min_pt_eig(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return PPTThreshold(min(max(lo, 0.0), 1.0), True)


def ppt_threshold_analytic(d, mu, kind="first"):
    """Closed-form PPT threshold where one is available.

    Covers d=3 (both kinds; the second kind is unitarily equivalent to the
    first with reversed weights, which leaves sqrt(mu_1 mu_2) unchanged) and
    equal weights at any d. Raises AnalyticUnavailable for d>3 with unequal
    weights, where only the numeric threshold is exposed.
    """
    mu = tuple(float(x) for x in mu)
    if len(mu) != d - 1:
        raise DimensionError(f"need {d - 1} weights, got {len(mu)}")
    if kind == "second" and d != 3:
        raise UnsupportedDimension("second-kind probe family exists for d=3 only")
    if d == 3:
        s = float(np.sqrt(mu[0] * mu[1]))
        return s / (1.0 + s)
    if max(mu) - min(mu) <= 1e-12:
        return 1.0 / d
    raise AnalyticUnavailable(
        "no unambiguous closed form for d>3 with unequal weights; "
        "use ppt_threshold_numeric"
    )
