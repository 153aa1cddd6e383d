import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwit.errors import (DegenerateParameters, Infeasible,
                         NormalizationError, Unbounded)
from qwit.lp_engine import (AggregatedDistribution, LinearProgram, aggregate,
                            c_gamma_min_analytic, critical_lp,
                            enumerate_vertices, extreme_point_generators,
                            extreme_points, feasible_polytope,
                            product_distribution, r_critical, simplex_solve,
                            witness_objective)
from qwit.witnesses import ChoiParams


def draw_in_regime(rng, d):
    while True:
        a = rng.uniform(0.0, d, size=d)
        a[0] = rng.uniform(1.0, d - 1.0)
        if a.sum() >= d:
            return tuple(a)


def test_distribution_table_shape_and_mass():
    rng = np.random.default_rng(2)
    for d in (2, 3, 4, 5):
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        w = rng.normal(size=d) + 1j * rng.normal(size=d)
        v /= np.linalg.norm(v)
        w /= np.linalg.norm(w)
        P = product_distribution(v, w, d)
        assert P.shape == (d, d)
        assert abs(P.sum() - 1.0) <= 1e-12
        assert P.min() >= -1e-15
        assert P.max() <= 1.0 / d + 1e-12


def test_distribution_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        product_distribution(np.array([1.0, 1.0, 0.0]),
                             np.array([1.0, 0.0, 0.0]), 3)


def test_aggregate_hand_examples_first_kind():
    d = 3
    w = np.exp(2j * np.pi * np.arange(d) / d)
    uniform = np.full(d, 1.0 / np.sqrt(d), dtype=complex)
    flat = aggregate(product_distribution(w / np.sqrt(3), uniform, d))
    assert np.allclose(flat.P, (1 / 3, 1 / 3, 1 / 3), atol=1e-12)
    e = np.eye(d, dtype=complex)
    unit = aggregate(product_distribution(e[0], e[1], d))
    assert np.allclose(unit.P, (0, 1, 0), atol=1e-12)
    cap = aggregate(product_distribution(e[0], e[0], d))
    assert np.allclose(cap.P, (2 / 3, 0, 0), atol=1e-12)


def test_aggregate_hand_examples_second_kind():
    d = 3
    e = np.eye(d, dtype=complex)
    # a matched computational pair spreads over the nonzero phase rows
    pt = aggregate(product_distribution(e[0], e[0], d), kind="second")
    assert np.allclose(pt.P, (0, 1 / 3, 1 / 3), atol=1e-12)
    flat = aggregate(product_distribution(e[0], e[1], d), kind="second")
    assert np.allclose(flat.P, (1 / 3, 1 / 3, 1 / 3), atol=1e-12)


def test_aggregate_rejects_bad_kind():
    with pytest.raises(ValueError):
        aggregate(np.full((3, 3), 1.0 / 9.0), kind="third")


def test_aggregated_distribution_validation():
    with pytest.raises(ValueError):
        AggregatedDistribution(3, (0.5, 0.5))
    with pytest.raises(ValueError):
        AggregatedDistribution(3, (-0.1, 0.5, 0.5))
    with pytest.raises(ValueError):
        AggregatedDistribution(3, (0.5, 0.5, 0.5))


@pytest.mark.parametrize("kind", ["first", "second"])
def test_extreme_points_d3(kind):
    pts = {p.P for p in extreme_points(3, kind)}
    expected = {
        (1 / 3, 1 / 3, 1 / 3),
        (0.0, 1.0, 0.0),
        (0.0, 0.0, 1.0),
        (2 / 3, 0.0, 0.0),
    }
    assert len(pts) == 4
    for want in expected:
        assert any(max(abs(x - y) for x, y in zip(p, want)) <= 1e-12
                   for p in pts)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("kind", ["first", "second"])
def test_extreme_point_generators_verify(d, kind):
    # extreme_points re-derives each corner from its product pair and raises
    # on mismatch, so surviving the call is the assertion
    pts = extreme_points(d, kind)
    assert len(pts) == d + 1


def test_extreme_points_satisfy_polytope():
    for d in (2, 3, 4):
        lp = feasible_polytope(d)
        for point in extreme_points(d):
            x = np.array(point.P)
            for coeffs, rel, bound in lp.constraints:
                v = float(np.asarray(coeffs) @ x)
                if rel == "<=":
                    assert v <= bound + 1e-12
                else:
                    assert v >= bound - 1e-12
            assert x.min() >= -1e-15


def test_simplex_small_programs():
    lp = LinearProgram(objective=np.array([1.0, 2.0]),
                       constraints=[(np.array([1.0, 1.0]), ">=", 0.5)])
    val, x = simplex_solve(lp)
    assert abs(val - 0.5) <= 1e-12
    assert np.allclose(x, [0.5, 0.0], atol=1e-12)

    lp = LinearProgram(objective=np.array([1.0, 1.0]),
                       constraints=[(np.array([1.0, -1.0]), "==", 0.25)],
                       bounds=[(0.0, 1.0), (0.0, 1.0)])
    val, x = simplex_solve(lp)
    assert abs(val - 0.25) <= 1e-12
    assert np.allclose(x, [0.25, 0.0], atol=1e-12)


def test_simplex_infeasible_and_unbounded():
    with pytest.raises(Infeasible):
        simplex_solve(LinearProgram(
            objective=np.array([1.0]),
            constraints=[(np.array([1.0]), "<=", -1.0)]))
    with pytest.raises(Unbounded):
        simplex_solve(LinearProgram(objective=np.array([-1.0, 0.0])))


def test_c_gamma_min_values():
    assert abs(c_gamma_min_analytic(ChoiParams(d=3, a=(1, 1, 1)))
               - 1.0 / 12.0) <= 1e-15
    assert abs(c_gamma_min_analytic(ChoiParams(d=3, a=(2, 1, 1)))
               - 2.0 / 27.0) <= 1e-15
    for d in range(2, 7):
        got = c_gamma_min_analytic(ChoiParams(d=d, a=tuple([1.0] * d)))
        assert abs(got - 1.0 / (d * (d + 1))) <= 1e-15


def test_witness_objective_values():
    g = witness_objective(ChoiParams(d=3, a=(1, 1, 1)))
    assert np.allclose(g, [1 / 8, 1 / 8, 1 / 8], atol=1e-15)
    g = witness_objective(ChoiParams(d=3, a=(2, 1, 0)))
    # N = 5, costs (1/5, (1+1)/15, (0+1)/15)
    assert np.allclose(g, [0.2, 2 / 15, 1 / 15], atol=1e-15)


def test_degenerate_normalization_raises():
    with pytest.raises(DegenerateParameters):
        witness_objective(ChoiParams(d=3, a=(4.0, 0.0, 0.0)))
    with pytest.raises(DegenerateParameters):
        c_gamma_min_analytic(ChoiParams(d=3, a=(4.0, 0.0, 0.0)))


def test_r_critical_reference_points():
    for d in range(2, 7):
        res = r_critical(ChoiParams(d=d, a=tuple([1.0] * d)))
        assert abs(res.r_c - (-float(d))) <= 1e-9
    res = r_critical(ChoiParams(d=3, a=(2, 1, 1)))
    assert abs(res.r_c - (-2.0)) <= 1e-9
    assert abs(res.c_gamma_min - 2.0 / 27.0) <= 1e-12


def test_r_critical_argmin_all_ones():
    res = r_critical(ChoiParams(d=3, a=(1, 1, 1)))
    assert np.allclose(res.argmin.P, (0.0, 0.0, 2.0 / 3.0), atol=1e-12)


def test_r_critical_methods_agree():
    params = ChoiParams(d=4, a=(1.5, 0.5, 2.0, 1.0))
    both = r_critical(params, method="both")
    ana = r_critical(params, method="analytic")
    lp = r_critical(params, method="simplex")
    assert abs(both.r_c - ana.r_c) <= 1e-12
    assert abs(both.r_c - lp.r_c) <= 1e-9
    with pytest.raises(ValueError):
        r_critical(params, method="interior")


def test_choi_r_report():
    res = r_critical(ChoiParams(d=3, a=(2, 1, 0)))
    assert abs(res.choi_r - (-1.5)) <= 1e-12
    assert abs(res.r_c - (-2.0 / 3.0)) <= 1e-12
    assert res.choi_r_ge_rc is False
    # with the first weight also the smallest the two weights coincide
    res = r_critical(ChoiParams(d=3, a=(1.0, 1.5, 2.0)))
    assert abs(res.choi_r - res.r_c) <= 1e-9
    assert res.choi_r_ge_rc is True


def test_rc_degenerate_when_weight_undefined():
    with pytest.raises(DegenerateParameters):
        r_critical(ChoiParams(d=3, a=(5.0, 0.1, 0.1)))


def test_simplex_against_vertex_enumeration():
    rng = np.random.default_rng(33)
    for _ in range(10):
        params = ChoiParams(d=3, a=draw_in_regime(rng, 3))
        lp = critical_lp(params)
        val, _ = simplex_solve(lp)
        verts = enumerate_vertices(lp)
        assert verts
        best = min(float(lp.objective @ v) for v in verts)
        assert abs(val - best) <= 1e-9


def test_sampled_states_never_beat_optimum():
    rng = np.random.default_rng(37)
    params = ChoiParams(d=3, a=(1.2, 0.8, 1.5))
    opt, _ = simplex_solve(critical_lp(params))
    g = witness_objective(params)
    for _ in range(200):
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        w = rng.normal(size=3) + 1j * rng.normal(size=3)
        v /= np.linalg.norm(v)
        w /= np.linalg.norm(w)
        agg = aggregate(product_distribution(v, w, 3))
        assert float(g @ np.array(agg.P)) >= opt - 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5), st.integers(0, 10 ** 6))
def test_simplex_matches_closed_form_in_regime(d, seed):
    rng = np.random.default_rng(seed)
    params = ChoiParams(d=d, a=draw_in_regime(rng, d))
    val, _ = simplex_solve(critical_lp(params))
    assert abs(val - c_gamma_min_analytic(params)) <= 1e-9


def test_generators_cover_both_kinds_distinctly():
    first = extreme_point_generators(3, "first")
    second = extreme_point_generators(3, "second")
    # same corner points, different product pairs behind them
    assert [p.P for p, _, _ in first] == [p.P for p, _, _ in second]
    assert not np.allclose(first[0][1], second[0][1])
