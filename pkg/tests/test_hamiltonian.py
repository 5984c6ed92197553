import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_hamiltonian
from nevanlinna import (HamburgerHamiltonian, HamiltonianError, b_s_sequence, det_omega_nodes,
                        det_omega_real, greedy_partition_count, omega_nodes, sigma_partition)
from nevanlinna.hamiltonian import (DOUBLE_SUM_MAX, _det_double_sum, det_omega_window,
                                    load_hamiltonian, node_position, save_hamiltonian)
from oracles import brute_det_omega, brute_pair_sum

PI = math.pi
TWO = HamburgerHamiltonian([1.0, 1.0], [PI / 2, 0.0])
FOUR = HamburgerHamiltonian([1.0] * 4, [PI / 2, 0.0, PI / 2, 0.0])


def test_node_positions():
    H = HamburgerHamiltonian([1.0, 2.0], [0.0, 1.0])
    assert node_position(H, 0) == 0.0
    assert node_position(H, 2) == 3.0
    assert node_position(HamburgerHamiltonian([0.5, 0.25, 0.125], [0, 1, 2]), 3) == 0.875
    with pytest.raises(IndexError):
        node_position(H, 3)


def test_construction_rejects_bad_input():
    with pytest.raises(HamiltonianError):
        HamburgerHamiltonian([1.0, -1.0], [0.0, 1.0])
    with pytest.raises(HamiltonianError):
        HamburgerHamiltonian([1.0, 1.0], [0.0, PI])
    with pytest.raises(HamiltonianError):
        HamburgerHamiltonian([1.0], [0.0, 1.0])
    with pytest.raises(HamiltonianError):
        HamburgerHamiltonian.from_dict({"lengths": [1.0]})


def test_det_omega_hand_values():
    assert det_omega_nodes(HamburgerHamiltonian([1, 1], [PI / 2, PI / 4]), 0, 2) == pytest.approx(0.5)
    assert det_omega_nodes(TWO, 0, 2) == pytest.approx(1.0)
    assert det_omega_nodes(TWO, 0, 1) == 0.0
    with pytest.raises(IndexError):
        det_omega_nodes(TWO, 1, 1)


def test_omega_matrix_trace_and_psd():
    H = random_hamiltonian(np.random.default_rng(3), 40)
    O = omega_nodes(H, 5, 30)
    assert O.trace == pytest.approx(math.fsum(H.lengths[5:30]), rel=1e-12)
    assert np.allclose(O.entries, O.entries.T)
    assert np.all(np.linalg.eigvalsh(O.entries) >= -1e-15)
    assert O.det == pytest.approx(brute_det_omega(H.lengths[5:30], H.angles[5:30]), rel=1e-8)


def test_det_omega_real():
    assert det_omega_real(TWO, 0.0, 1.5) == pytest.approx(0.5)
    assert det_omega_real(TWO, 0.3, 0.9) == 0.0
    assert det_omega_real(TWO, 0.0, 2.0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        det_omega_real(TWO, 1.0, 1.0)
    with pytest.raises(ValueError):
        det_omega_real(TWO, 0.0, 3.0)


def test_det_omega_real_matches_nodes_and_is_monotone():
    H = random_hamiltonian(np.random.default_rng(4), 12, log_lo=-1)
    x = H.nodes
    for m, n in [(0, 12), (2, 7), (5, 6)]:
        assert det_omega_real(H, x[m], x[n]) == pytest.approx(det_omega_nodes(H, m, n), rel=1e-12, abs=1e-300)
    ts = np.linspace(x[1] + 1e-9, x[-1], 200)
    d = [det_omega_real(H, x[1], t) for t in ts]
    assert np.all(np.diff(d) >= -1e-14)


@given(st.integers(2, 30), st.integers(0, 2**32 - 1))
def test_double_sum_matches_pair_sum_and_matrix_det(n, seed):
    rng = np.random.default_rng(seed)
    l = rng.uniform(0.1, 1, n)
    phi = rng.uniform(0, 2 * PI, n)
    d = _det_double_sum(l, phi)
    assert d == pytest.approx(brute_pair_sum(l, phi), rel=1e-10, abs=1e-14)
    assert d == pytest.approx(brute_det_omega(l, phi), rel=1e-8, abs=1e-12)


def test_wide_window_paths_agree():
    rng = np.random.default_rng(5)
    n = 3 * DOUBLE_SUM_MAX
    l = rng.uniform(0.01, 1, n)
    phi = rng.uniform(0, PI, n)
    assert det_omega_window(l, phi) == pytest.approx(_det_double_sum(l, phi), rel=1e-8)
    # nearly aligned angles trip the cancellation guard
    phi = 0.3 + 1e-7 * rng.standard_normal(n)
    assert det_omega_window(l, phi) == pytest.approx(_det_double_sum(l, phi), rel=1e-6)


def test_det_zero_only_on_single_intervals():
    # consecutive angles must jump, so any window of two or more intervals is positive
    H = HamburgerHamiltonian([1.0, 2.0, 3.0], [0.2, 0.7 + PI, 0.2 + 2 * PI])
    assert det_omega_nodes(H, 1, 2) == 0.0
    assert det_omega_nodes(H, 0, 2) > 0 and det_omega_nodes(H, 0, 3) > 0
    with pytest.raises(HamiltonianError):
        HamburgerHamiltonian([1.0, 2.0], [0.2, 0.2 + PI])


def test_b_s_examples():
    H = HamburgerHamiltonian([1, 1], [PI / 2, PI / 4])
    assert b_s_sequence(H, 2)[0] == pytest.approx(math.sqrt(2))
    with pytest.raises(ValueError):
        b_s_sequence(H, 3)
    with pytest.raises(ValueError):
        b_s_sequence(H, 1)


@given(st.integers(0, 2**32 - 1))
def test_b_s_nonincreasing_in_s(seed):
    H = random_hamiltonian(np.random.default_rng(seed), 25)
    prev = b_s_sequence(H, 2)
    for s in range(3, 8):
        cur = b_s_sequence(H, s)
        assert np.all(cur <= prev[: cur.size] * (1 + 1e-12))
        prev = cur


def test_b_s_matches_window_det():
    H = random_hamiltonian(np.random.default_rng(6), 30, log_lo=-2)
    b = b_s_sequence(H, 4)
    for j in (0, 7, 26):
        assert b[j] == pytest.approx(det_omega_nodes(H, j, j + 4) ** -0.5, rel=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(3, 60))
def test_minkowski_superadditivity(seed, n):
    rng = np.random.default_rng(seed)
    H = random_hamiltonian(rng, n)
    m, p, q = sorted(rng.choice(n + 1, 3, replace=False))
    whole = math.sqrt(det_omega_nodes(H, m, q))
    parts = math.sqrt(det_omega_nodes(H, m, p)) + math.sqrt(det_omega_nodes(H, p, q))
    assert whole >= parts - 1e-12 * max(1.0, whole)


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_inverse_b_sum_bounded(seed, s):
    H = random_hamiltonian(np.random.default_rng(seed), 50)
    lhs = math.fsum(1 / b_s_sequence(H, s))
    assert lhs <= s * math.sqrt(det_omega_nodes(H, 0, H.n)) * (1 + 1e-12)


def test_greedy_examples():
    assert greedy_partition_count(TWO, 2.0) == 1
    assert greedy_partition_count(TWO, 0.5) == 0
    assert greedy_partition_count(FOUR, 1.0) == 2


def test_sigma_examples():
    pts, kappa = sigma_partition(TWO, 2.0)
    assert kappa == 2 and pts == pytest.approx([0, 1.25, 2])
    assert det_omega_real(TWO, 0, pts[1]) == pytest.approx(0.25, rel=1e-12)
    pts, kappa = sigma_partition(TWO, 1.0)  # det(0, 2) = 1 ties with 1/r^2
    assert kappa == 1 and list(pts) == [0.0, 2.0]
    pts, kappa = sigma_partition(TWO, 0.1)
    assert kappa == 1 and list(pts) == [0.0, 2.0]


@given(st.integers(0, 2**32 - 1), st.floats(0.5, 1e4))
def test_sigma_partition_contract(seed, r):
    H = random_hamiltonian(np.random.default_rng(seed), 15, log_lo=-3)
    pts, kappa = sigma_partition(H, r)
    assert pts[0] == 0.0 and pts[-1] == H.total_length and np.all(np.diff(pts) > 0)
    target = 1 / r**2
    for a, b in zip(pts[:-2], pts[1:-1]):
        assert det_omega_real(H, a, b) == pytest.approx(target, rel=1e-9)
    assert det_omega_real(H, pts[-2], pts[-1]) <= target * (1 + 1e-9)
    g = greedy_partition_count(H, r)
    assert g <= kappa <= g + 1


@given(st.integers(0, 2**32 - 1))
def test_counts_nondecreasing_in_r(seed):
    H = random_hamiltonian(np.random.default_rng(seed), 12, log_lo=-2)
    rs = np.geomspace(0.1, 1e4, 25)
    g = [greedy_partition_count(H, r) for r in rs]
    k = [sigma_partition(H, r)[1] for r in rs]
    assert np.all(np.diff(g) >= 0) and np.all(np.diff(k) >= 0)


def test_json_round_trip(tmp_path):
    H = random_hamiltonian(np.random.default_rng(7), 10)
    save_hamiltonian(H, tmp_path / "h.json")
    H2 = load_hamiltonian(tmp_path / "h.json")
    assert np.array_equal(H.lengths, H2.lengths) and np.array_equal(H.angles, H2.angles)
    doc = json.loads((tmp_path / "h.json").read_text())
    assert {"lengths", "angles"} <= doc.keys()


def test_truncate_keeps_tail_rule():
    H = HamburgerHamiltonian([1.0, 0.5, 0.25], [0, 1, 2], length_tail=lambda n: 2.0 ** (1 - n))
    T = H.truncate(2)
    assert T.n == 2 and T.tail_length(2) == 0.5
    assert HamburgerHamiltonian([1.0, 0.5], [0, 1]).tail_length(1) == 0.5
