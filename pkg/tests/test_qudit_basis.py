import itertools

import numpy as np
import pytest

from qwit.qudit_basis import (bell_basis, bell_projector, bell_projector_pt,
                              bell_state, fourier_matrix, modulation,
                              phase_root, shift)
from qwit.tensor_core import herm_eigvals, kron, partial_transpose


def test_phase_root_is_primitive():
    for d in range(2, 8):
        w = phase_root(d)
        assert abs(w ** d - 1.0) <= 1e-14
        assert abs(w - 1.0) > 0.1


def test_shift_basics():
    v2 = np.zeros(3)
    v2[2] = 1.0
    assert np.allclose(shift(3, 1) @ v2, [1.0, 0.0, 0.0], atol=1e-14)
    assert np.array_equal(shift(4, 0), np.eye(4))
    assert np.allclose(shift(4, 2) @ shift(4, 2), np.eye(4), atol=1e-14)


def test_shift_unitary_and_order():
    for d in (2, 3, 5):
        S = shift(d, 1)
        assert np.allclose(S @ S.conj().T, np.eye(d), atol=1e-14)
        acc = np.eye(d)
        for _ in range(d):
            acc = S @ acc
        assert np.allclose(acc, np.eye(d), atol=1e-13)


def test_modulation_basics():
    assert np.array_equal(modulation(3, 0), np.eye(3))
    assert np.allclose(modulation(2, 1), np.diag([1.0, -1.0]), atol=1e-15)
    M = modulation(3, 1)
    assert np.allclose(M @ M @ M, np.eye(3), atol=1e-14)


def test_bell_state_d2():
    expected = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2)
    assert np.allclose(bell_state(2, 0, 0), expected, atol=1e-15)


def test_bell_state_d3_hand_value():
    # (1/sqrt(3)) (|0,2> + w|1,0> + w^2|2,1>)
    w = phase_root(3)
    expected = np.zeros(9, dtype=complex)
    expected[2] = 1.0
    expected[3] = w
    expected[7] = w ** 2
    expected /= np.sqrt(3)
    assert np.allclose(bell_state(3, 1, 2), expected, atol=1e-14)


def test_bell_orthonormality():
    for d in range(2, 6):
        B = bell_basis(d)
        G = B.conj() @ B.T
        assert np.max(np.abs(G - np.eye(d * d))) <= 1e-12


def test_bell_completeness():
    for d in range(2, 6):
        B = bell_basis(d)
        total = B.T @ B.conj()
        assert np.max(np.abs(total - np.eye(d * d))) <= 1e-12


def test_weyl_covariance_on_projectors():
    # (Omega^a (x) S^b) maps the (k, m) projector onto the (k+a, m+b) one
    for d in (2, 3):
        for a, b, k, m in itertools.product(range(d), repeat=4):
            U = kron(modulation(d, a), shift(d, b))
            moved = U @ bell_projector(d, k, m) @ U.conj().T
            target = bell_projector(d, (k + a) % d, (m + b) % d)
            assert np.max(np.abs(moved - target)) <= 1e-12


def test_bell_projector_pt_d2_swap():
    pt = bell_projector_pt(2)
    swap = np.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            swap[i * 2 + j, j * 2 + i] = 1.0
    assert np.allclose(pt, swap / 2.0, atol=1e-12)
    assert np.allclose(herm_eigvals(pt), [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_bell_projector_pt_trace():
    for d in range(2, 8):
        assert abs(np.trace(bell_projector_pt(d)) - 1.0) <= 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_bell_projector_pt_matches_direct(d):
    direct = partial_transpose(bell_projector(d, 0, 0), d, d, "left")
    assert np.max(np.abs(bell_projector_pt(d) - direct)) <= 1e-12


def test_fourier_exchanges_bell_indices():
    # (F (x) conj(F)) takes the (k, m) projector to the (-m, k) one; this is
    # the transform behind the second witness type
    for d in (2, 3, 4):
        F = fourier_matrix(d)
        U = kron(F, F.conj())
        for k in range(d):
            for m in range(d):
                moved = U @ bell_projector(d, k, m) @ U.conj().T
                target = bell_projector(d, (-m) % d, k)
                assert np.max(np.abs(moved - target)) <= 1e-12


def test_fourier_unitary():
    for d in (2, 3, 5):
        F = fourier_matrix(d)
        assert np.allclose(F @ F.conj().T, np.eye(d), atol=1e-13)
