"""Product-state Bell-overlap distributions and the critical-noise LP.

The pipeline: a product pair (alpha, beta) induces a d x d table of Bell
overlaps, aggregation collapses it to d numbers, and the witness-positivity
question becomes a tiny linear program over the polytope those aggregates can
reach. Its optimum fixes the critical white-noise weight r_c. A closed form
for the optimum is kept alongside the simplex route so each checks the other.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateParameters, Infeasible, NormalizationError, Unbounded
from .qudit_basis import bell_basis

_TYPES = ("first", "second")


@dataclass(frozen=True)
class AggregatedDistribution:
    """The d aggregated Bell weights of one product state."""

    d: int
    P: tuple

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(float(x) for x in self.P))
        if len(self.P) != self.d:
            raise ValueError(f"need {self.d} entries, got {len(self.P)}")
        if min(self.P) < -1e-12:
            raise ValueError("aggregated weights must be nonnegative")
        if sum(self.P) > 1.0 + 1e-12:
            raise ValueError("aggregated weights exceed unit total")


def product_distribution(alpha, beta, d):
    """Bell overlap table P[k, m] = |<psi_km| alpha (x) beta>|^2.

    Requires unit vectors. Every entry lies in [0, 1/d] and the table sums
    to 1; those are checked by the property tests rather than here.
    """
    alpha = np.asarray(alpha, dtype=complex).reshape(-1)
    beta = np.asarray(beta, dtype=complex).reshape(-1)
    if alpha.shape != (d,) or beta.shape != (d,):
        raise ValueError(f"expected two vectors of length {d}")
    for v in (alpha, beta):
        if abs(np.vdot(v, v).real - 1.0) > 1e-9:
            raise NormalizationError("input vectors must be normalized")
    amps = np.conj(bell_basis(d)) @ np.kron(alpha, beta)
    return np.abs(amps).reshape(d, d) ** 2


def aggregate(P, kind="first"):
    """Collapse the overlap table to d numbers.

    kind "first" sums each shift-index column (the (0,0) cell is excluded
    from the first aggregate); kind "second" mirrors this over phase-index
    rows. Entries are clipped at zero to absorb roundoff.
    """
    P = np.asarray(P, dtype=float)
    d = P.shape[0]
    if P.shape != (d, d):
        raise ValueError("expected a square table")
    if kind not in _TYPES:
        raise ValueError(f"kind must be one of {_TYPES}")
    sums = P.sum(axis=0) if kind == "first" else P.sum(axis=1)
    out = sums.copy()
    out[0] -= P[0, 0]
    return AggregatedDistribution(d=d, P=tuple(np.maximum(out, 0.0)))


def extreme_point_generators(d, kind="first"):
    """The polytope's corner points, each with a product pair reaching it.

    Returns a list of (AggregatedDistribution, alpha, beta). The point set is
    the same for both kinds; the generating product states differ.
    """
    if kind not in _TYPES:
        raise ValueError(f"kind must be one of {_TYPES}")
    w = np.exp(2j * np.pi * np.arange(d) / d)
    uniform = np.full(d, 1.0 / np.sqrt(d), dtype=complex)
    basis = np.eye(d, dtype=complex)

    out = []
    flat = AggregatedDistribution(d, (1.0 / d,) * d)
    if kind == "first":
        out.append((flat, w / np.sqrt(d), uniform.copy()))
    else:
        out.append((flat, basis[0].copy(), basis[1 % d].copy()))
    for i in range(2, d + 1):
        point = AggregatedDistribution(d, tuple(1.0 if j == i - 1 else 0.0
                                                for j in range(d)))
        if kind == "first":
            out.append((point, basis[0].copy(), basis[i - 1].copy()))
        else:
            out.append((point, w ** (i - 1) / np.sqrt(d), uniform.copy()))
    cap = AggregatedDistribution(d, ((d - 1.0) / d,) + (0.0,) * (d - 1))
    if kind == "first":
        out.append((cap, basis[0].copy(), basis[0].copy()))
    else:
        out.append((cap, uniform.copy(), uniform.copy()))
    return out


def extreme_points(d, kind="first"):
    """Corner points of the aggregated feasible region, generator-checked."""
    checked = []
    for point, alpha, beta in extreme_point_generators(d, kind):
        got = aggregate(product_distribution(alpha, beta, d), kind)
        if max(abs(x - y) for x, y in zip(got.P, point.P)) > 1e-12:
            raise AssertionError(
                f"generator for {point.P} reproduces {got.P} instead"
            )
        checked.append(point)
    return checked


@dataclass
class LinearProgram:
    """Minimize objective . x subject to row constraints and variable bounds.

    constraints is a list of (coefficients, relation, bound) with relation
    one of "<=", ">=", "=="; bounds is one (lo, hi) pair per variable with
    hi=None for unbounded above.
    """

    objective: np.ndarray
    constraints: list = field(default_factory=list)
    bounds: list = field(default_factory=list)

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        n = self.objective.size
        if not self.bounds:
            self.bounds = [(0.0, None)] * n
        if len(self.bounds) != n:
            raise ValueError("one bound pair per variable")
        for coeffs, rel, _ in self.constraints:
            if np.asarray(coeffs).size != n:
                raise ValueError("constraint width mismatch")
            if rel not in ("<=", ">=", "=="):
                raise ValueError(f"bad relation {rel!r}")


def feasible_polytope(d):
    """The region the aggregated weights of product states can occupy.

    Box form: each weight nonnegative, total between (d-1)/d and 1, first
    weight at most (d-1)/d. The total's floor is forced by the 1/d cap on the
    (0,0) overlap, the first weight's cap by the d-1 remaining cells of its
    column. All corner points of extreme_points satisfy these, the flat and
    unit points with the total at 1 and the capped point at the floor.

    Returned as a LinearProgram with a zero objective; callers fill in costs.
    """
    ones = np.ones(d)
    first = np.zeros(d)
    first[0] = 1.0
    constraints = [
        (ones, "<=", 1.0),
        (ones, ">=", (d - 1.0) / d),
        (first, "<=", (d - 1.0) / d),
    ]
    return LinearProgram(objective=np.zeros(d), constraints=constraints,
                         bounds=[(0.0, None)] * d)


_PIVOT_EPS = 1e-10


def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and abs(T[r, col]) > 1e-14:
            T[r] -= T[r, col] * T[row]
    basis[row] = col


def _run_simplex(T, basis, ncols):
    """Bland-rule iterations on tableau T (last row = cost, last col = rhs)."""
    m = T.shape[0] - 1
    while True:
        col = -1
        for j in range(ncols):
            if T[-1, j] < -_PIVOT_EPS:
                col = j
                break
        if col < 0:
            return
        row, best = -1, np.inf
        for i in range(m):
            if T[i, col] > _PIVOT_EPS:
                ratio = T[i, -1] / T[i, col]
                if ratio < best - 1e-12 or (
                    abs(ratio - best) <= 1e-12
                    and (row < 0 or basis[i] < basis[row])
                ):
                    best, row = ratio, i
        if row < 0:
            raise Unbounded("objective decreases without bound")
        _pivot(T, basis, row, col)


def simplex_solve(lp):
    """Two-phase dense simplex; returns (optimal value, argmin vector).

    Deterministic: Bland's rule picks the lowest eligible index, so there is
    no cycling and reruns agree bit for bit. Sized for the toy programs here
    (a handful of variables and rows), nothing more.
    """
    n = lp.objective.size
    lo = np.array([b[0] for b in lp.bounds], dtype=float)

    rows = []
    for coeffs, rel, bound in lp.constraints:
        coeffs = np.asarray(coeffs, dtype=float)
        rows.append((coeffs, rel, float(bound) - float(coeffs @ lo)))
    for i, (_, hi) in enumerate(lp.bounds):
        if hi is not None:
            e = np.zeros(n)
            e[i] = 1.0
            rows.append((e, "<=", float(hi) - lo[i]))

    m = len(rows)
    nslack = sum(1 for _, rel, _ in rows if rel != "==")
    width = n + nslack
    A = np.zeros((m, width + m))  # artificial columns appended per row
    b = np.zeros(m)
    basis = [-1] * m
    slack_at = 0
    nart = 0
    art_cols = []
    for i, (coeffs, rel, rhs) in enumerate(rows):
        sign = 1.0
        if rhs < 0:
            sign, rhs = -1.0, -rhs
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        A[i, :n] = sign * coeffs
        b[i] = rhs
        if rel == "<=":
            A[i, n + slack_at] = 1.0
            basis[i] = n + slack_at
            slack_at += 1
        elif rel == ">=":
            A[i, n + slack_at] = -1.0
            slack_at += 1
        if basis[i] < 0:
            col = width + nart
            A[i, col] = 1.0
            basis[i] = col
            art_cols.append(col)
            nart += 1
    total = width + nart
    A = A[:, :total]

    T = np.zeros((m + 1, total + 1))
    T[:m, :total] = A
    T[:m, -1] = b
    if nart:
        for col in art_cols:
            T[-1, col] = 1.0
        for i in range(m):
            if basis[i] in art_cols:
                T[-1] -= T[i]
        _run_simplex(T, basis, total)
        if T[-1, -1] < -1e-8:
            raise Infeasible(f"phase-1 residual {-T[-1, -1]:g}")
        for i in range(m):  # drive leftover artificials out where possible
            if basis[i] in art_cols:
                for j in range(width):
                    if abs(T[i, j]) > _PIVOT_EPS:
                        _pivot(T, basis, i, j)
                        break

    T[-1, :] = 0.0
    T[-1, :n] = lp.objective
    for col in art_cols:
        T[-1, col] = 0.0
    for i in range(m):
        if T[-1, basis[i]] != 0.0:
            T[-1] -= T[-1, basis[i]] * T[i]
    if nart:
        for col in art_cols:  # never re-enter
            T[:, col] = 0.0
    _run_simplex(T, basis, width)

    y = np.zeros(total)
    for i in range(m):
        y[basis[i]] = T[i, -1]
    x = y[:n] + lo
    return float(lp.objective @ x), x


def witness_objective(params):
    """LP cost vector over the aggregated weights for a given witness.

    Identical for both kinds (aggregation is transposed to match). Entry 0
    costs 1/N and entry m costs (a_m + d - a_0) / (d N) with
    N = d^2 - 1 + sum(a) - d a_0; N must be nonzero.
    """
    d = params.d
    a = np.asarray(params.a, dtype=float)
    N = d * d - 1.0 + a.sum() - d * a[0]
    if abs(N) < 1e-12:
        raise DegenerateParameters("witness objective normalization vanished")
    g = (a + d - a[0]) / (d * N)
    g[0] = 1.0 / N
    return g


def critical_lp(params):
    """The full LP whose optimum is the minimal aggregated witness overlap."""
    lp = feasible_polytope(params.d)
    lp.objective = witness_objective(params)
    return lp


def c_gamma_min_analytic(params):
    """Closed form of the LP optimum.

    ((d-1)/d) (1 + (a_min - a_0)/d) / (d^2 - 1 + sum(a) - d a_0); the
    denominator doubles as the objective normalization above.
    """
    d = params.d
    N = d * d - 1.0 + params.a_sum - d * params.a[0]
    if abs(N) < 1e-12:
        raise DegenerateParameters("closed form denominator vanished")
    return ((d - 1.0) / d) * (1.0 + (params.a_min - params.a[0]) / d) / N


@dataclass(frozen=True)
class CriticalResult:
    """LP outcome plus the induced critical white-noise weight.

    choi_r is the white-noise weight the witness itself carries in
    Bell-diagonal form, and choi_r_ge_rc records whether it clears r_c; the
    comparison can genuinely fail for weight vectors whose smallest entry
    sits below the first one, so it is reported rather than enforced.
    """

    c_gamma_min: float
    r_c: float
    argmin: AggregatedDistribution
    choi_r: float = None
    choi_r_ge_rc: bool = None


def _rc_from_c(c, d):
    denom = 1.0 - d * d * c
    if denom <= 1e-12:
        raise DegenerateParameters(
            f"critical weight undefined: 1 - d^2 C = {denom:g}"
        )
    return -d * d * c / denom


def r_critical(params, method="both"):
    """Critical white-noise weight r_c = -d^2 C / (1 - d^2 C).

    method "analytic" uses the closed form, "simplex" the LP, "both" runs the
    two and insists they agree to 1e-9. The reported argmin is the
    lexicographically smallest optimal point: with nonnegative costs the
    optimal face is exactly the mass-(d-1)/d distributions over the cheapest
    coordinates, so that point concentrates everything on the last of them.
    Out of that regime (possible only for a_0 > d + a_min) the solver's own
    vertex is reported instead.
    """
    d = params.d
    if method not in ("analytic", "simplex", "both"):
        raise ValueError(f"unknown method {method!r}")

    c_lp = vertex = None
    if method in ("simplex", "both"):
        c_lp, vertex = simplex_solve(critical_lp(params))
    c = c_lp
    if method in ("analytic", "both"):
        c = c_gamma_min_analytic(params)
        if c_lp is not None and abs(c_lp - c) > 1e-9:
            raise DegenerateParameters(
                f"simplex optimum {c_lp!r} and closed form {c!r} disagree; "
                "parameters are outside the closed form's regime"
            )
    if c < -1e-12:
        raise DegenerateParameters("negative overlap minimum")

    g = witness_objective(params)
    if g.min() >= 0.0:
        hot = int(np.flatnonzero(np.abs(g - g.min()) <= 1e-15)[-1])
        point = np.zeros(d)
        point[hot] = (d - 1.0) / d
    else:
        if vertex is None:
            _, vertex = simplex_solve(critical_lp(params))
        point = np.maximum(vertex, 0.0)
        point[point < 1e-11] = 0.0
    argmin = AggregatedDistribution(d=d, P=tuple(point))

    r_c = _rc_from_c(c, d)
    choi_r = None
    ge = None
    if params.a_sum > 1.0:
        choi_r = -d * (d - params.a[0]) / (params.a_sum - 1.0)
        ge = bool(choi_r >= r_c - 1e-9)
    return CriticalResult(c_gamma_min=float(c), r_c=float(r_c), argmin=argmin,
                          choi_r=choi_r, choi_r_ge_rc=ge)


def enumerate_vertices(lp, tol=1e-9):
    """Brute-force vertex enumeration for cross-checking the simplex.

    Intersects every n-subset of tight constraint candidates (rows plus
    active bounds), keeps the feasible solutions, dedupes. Exponential; meant
    for the d <= 4 programs in the tests.
    """
    from itertools import combinations

    n = lp.objective.size
    planes = [(np.asarray(c, dtype=float), float(b)) for c, _, b in lp.constraints]
    for i, (lo, hi) in enumerate(lp.bounds):
        e = np.zeros(n)
        e[i] = 1.0
        planes.append((e, float(lo)))
        if hi is not None:
            planes.append((e, float(hi)))

    def feasible(x):
        for coeffs, rel, bound in lp.constraints:
            v = float(np.asarray(coeffs) @ x)
            if rel == "<=" and v > bound + tol:
                return False
            if rel == ">=" and v < bound - tol:
                return False
            if rel == "==" and abs(v - bound) > tol:
                return False
        for i, (lo, hi) in enumerate(lp.bounds):
            if x[i] < lo - tol or (hi is not None and x[i] > hi + tol):
                return False
        return True

    verts = []
    for subset in combinations(range(len(planes)), n):
        A = np.array([planes[i][0] for i in subset])
        b = np.array([planes[i][1] for i in subset])
        if abs(np.linalg.det(A)) < 1e-12:
            continue
        x = np.linalg.solve(A, b)
        if feasible(x) and not any(np.allclose(x, v, atol=1e-8) for v in verts):
            verts.append(x)
    return verts
