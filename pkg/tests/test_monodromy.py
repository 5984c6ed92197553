import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from conftest import random_hamiltonian, random_jacobi
from nevanlinna import HamburgerHamiltonian, JacobiParameters, jacobi_to_hamiltonian
from nevanlinna.monodromy import (ScaledMatrix2, doubling_checkpoints, interval_factor, log_abs_w22,
                                  log_abs_w22_grid, monodromy, nevanlinna_logB, w22_with_truncation)
from oracles import brute_monodromy

PI = math.pi
TWO = HamburgerHamiltonian([1.0, 1.0], [PI / 2, 0.0])


def test_interval_factor_examples():
    z = 0.3 - 2.0j
    assert np.allclose(interval_factor(1.0, PI / 2, z).value(), [[1, 0], [-z, 1]], atol=1e-15)
    assert np.allclose(interval_factor(1.0, 0.0, z).value(), [[1, z], [0, 1]], atol=1e-15)
    assert np.allclose(interval_factor(2.5, 1.1, 0).value(), np.eye(2))
    with pytest.raises(ValueError):
        interval_factor(0.0, 1.0, z)


@given(st.floats(1e-6, 10), st.floats(-10, 10), st.complex_numbers(max_magnitude=1e2))
def test_interval_factor_unit_det_and_matches_expm(l, phi, z):
    f = interval_factor(l, phi, z)
    assert f.scaled_det() == pytest.approx(1.0, rel=1e-9, abs=1e-9)
    assert np.allclose(f.value(), brute_monodromy([l], [phi], z), rtol=1e-9, atol=1e-9 * abs(f.value()).max())


def test_two_interval_closed_form():
    for z in (0.5, 2j, 1 - 1j, 0):
        assert np.allclose(monodromy(TWO, z).value(), [[1, z], [-z, 1 - z * z]])
    for r in np.geomspace(1e-2, 1e10, 30):
        assert log_abs_w22(TWO, r) == pytest.approx(math.log1p(r * r), rel=1e-12)


def test_single_interval_and_small_r():
    H = HamburgerHamiltonian([3.0], [PI / 2])
    assert log_abs_w22(H, 1e5) == 0.0
    assert abs(log_abs_w22(random_hamiltonian(np.random.default_rng(1), 50), 1e-12)) < 1e-10
    with pytest.raises(ValueError):
        log_abs_w22(TWO, 0.0)


def test_identity_at_zero_and_truncation_index():
    H = random_hamiltonian(np.random.default_rng(2), 30)
    assert np.array_equal(monodromy(H, 0).value(), np.eye(2))
    assert np.array_equal(monodromy(H, 1j, n=0).value(), np.eye(2))
    with pytest.raises(IndexError):
        monodromy(H, 1j, n=31)


@given(st.integers(0, 2**32 - 1), st.integers(1, 25), st.complex_numbers(max_magnitude=10))
def test_matches_unscaled_product(seed, n, z):
    H = random_hamiltonian(np.random.default_rng(seed), n, log_lo=-2)
    W = monodromy(H, z)
    ref = brute_monodromy(H.lengths, H.angles, z)
    assert np.allclose(W.value(), ref, rtol=1e-10, atol=1e-10 * np.abs(ref).max())


@given(st.integers(0, 2**32 - 1), st.complex_numbers(max_magnitude=1e4))
def test_conjugate_points_conjugate_entries(seed, z):
    # entries are real polynomials in z, so W(conj z) = conj W(z)
    H = random_hamiltonian(np.random.default_rng(seed), 20)
    a, b = monodromy(H, z), monodromy(H, z.conjugate())
    assert b.log_scale == pytest.approx(a.log_scale, abs=1e-12)
    assert np.allclose(b.entries, a.entries.conj(), atol=1e-12)


def test_real_z_gives_real_entries():
    W = monodromy(random_hamiltonian(np.random.default_rng(3), 40), 17.0)
    assert np.all(W.entries.imag == 0)


@given(st.integers(0, 2**32 - 1), st.sampled_from([1e-2, 1e-1, 1.0]))
def test_unit_determinant_while_growth_is_mild(seed, r):
    # the scaled det cancels down to exp(-2 log_scale); only resolvable while that is not tiny
    H = random_hamiltonian(np.random.default_rng(seed), 200, log_lo=-4)
    W = monodromy(H, 1j * r)
    assume(W.log_scale < 1.0)
    assert W.scaled_det() == pytest.approx(1.0, rel=1e-9)


def test_determinant_precision_floor():
    # rounding in the normalized entries limits det accuracy to about eps * exp(2 log_scale)
    H = random_hamiltonian(np.random.default_rng(8), 200, log_lo=-4)
    W = monodromy(H, 100j)
    assert 5 < W.log_scale < 300
    err = abs(W.scaled_det() - 1.0)
    assert math.log(err) <= math.log(1e3 * np.finfo(float).eps) + 2 * W.log_scale


def test_normalized_entries_in_range():
    W = monodromy(random_hamiltonian(np.random.default_rng(4), 500), 1e6j)
    assert 0.5 <= np.abs(W.entries).max() <= 1.0
    m = ScaledMatrix2.from_matrix([[1e300, 0], [0, 1e-300]]) @ ScaledMatrix2.from_matrix([[1e300, 1], [0, 1]])
    assert m.log_abs(1, 1) == pytest.approx(600 * math.log(10), rel=1e-14)


def test_grid_matches_pointwise():
    H = random_hamiltonian(np.random.default_rng(5), 300)
    rs = np.geomspace(1e-1, 1e8, 19)
    assert np.allclose(log_abs_w22_grid(H, rs), [log_abs_w22(H, r) for r in rs], rtol=1e-12, atol=1e-12)


def test_truncation_contract():
    n2 = 4096
    j = np.arange(1, n2 + 1)
    H = HamburgerHamiltonian(j ** -2.0, np.cumsum(np.full(n2, 0.7)))
    for n1 in (256, 1024):
        tail = math.fsum(H.lengths[n1:])
        for r in (1e-3 / tail, 0.1 / tail):
            diff = abs(log_abs_w22(H, r, n1) - log_abs_w22(H, r))
            assert diff <= 2 * r * tail + 1


def test_w22_with_truncation_reasons():
    n = 1 << 14
    j = np.arange(1, n + 1)
    H = HamburgerHamiltonian(j ** -2.0, np.cumsum(np.full(n, 0.7)))
    cks = doubling_checkpoints(n, 1024)
    assert list(cks) == [1024, 2048, 4096, 8192, 16384]
    tails = np.array([1.0 / k for k in cks])  # ~ sum_{j>k} j^-2
    res = w22_with_truncation(H, [1.0, 1e3, 1e9], cks, tails)
    assert res.reason[0] == "tail" and res.n_used[0] == 1024
    assert res.reason[2] == "truncation-limited" and res.n_used[2] == n
    assert res.values[2] == pytest.approx(log_abs_w22(H, 1e9), rel=1e-12)
    for k, r in enumerate(res.r):
        v = res.values[k]
        assert v == pytest.approx(log_abs_w22(H, r, int(res.n_used[k])), rel=1e-12, abs=1e-12)
    # without tail information the doubling heuristic decides
    res = w22_with_truncation(H, [1e3], cks, np.full(cks.size, np.inf))
    assert res.reason[0] == "doubling"
    k = int(np.flatnonzero(cks == res.n_used[0])[0])
    assert abs(res.history[0, k] - res.history[0, k - 1]) <= 1e-3 * max(1.0, abs(res.values[0]))
    # with known tails the doubling heuristic is off
    res = w22_with_truncation(H, [1e3], cks, tails)
    assert res.reason[0] != "doubling"
    with pytest.raises(ValueError):
        w22_with_truncation(H, [1.0], np.array([n + 1]), np.array([0.0]))


def test_nevanlinna_logB_is_bridge_w22():
    J = random_jacobi(np.random.default_rng(6), 30)
    assert nevanlinna_logB(J, 5.0) == log_abs_w22(jacobi_to_hamiltonian(J), 5.0)


def test_free_jacobi_against_unscaled_product():
    for n in (5, 12, 20):
        J = JacobiParameters(np.zeros(n), np.ones(n))
        H = jacobi_to_hamiltonian(J)
        for r in (0.5, 3.0, 10.0):
            ref = brute_monodromy(H.lengths, H.angles, 1j * r)[1, 1]
            assert nevanlinna_logB(J, r) == pytest.approx(math.log(abs(ref)), rel=1e-10)
