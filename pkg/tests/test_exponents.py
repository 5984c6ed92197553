import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nevanlinna import b_s_sequence
from nevanlinna.experiments import generate, preset
from nevanlinna.exponents import (DIVERGENT, INCONCLUSIVE, SUMMABLE, classify_series,
                                  convergence_exponent, largest_term_index, log_lp_sum, lp_sum,
                                  tail_sum)

N = np.arange(1, 10**4 + 1, dtype=float)


def test_exact_power():
    est = convergence_exponent(N ** 2, "exact-power", power=2.0)
    assert est.value == 0.5 and est.residual == 0.0
    with pytest.raises(ValueError):
        convergence_exponent(N, "exact-power")


@pytest.mark.parametrize("method", ["ratio-limsup", "counting-slope"])
@pytest.mark.parametrize("power", [0.5, 1.0, 2.0, 3.5])
def test_power_law_estimates(method, power):
    est = convergence_exponent(N ** power, method)
    assert est.value == pytest.approx(1 / power, abs=0.05)
    assert est.value >= 0 and 0 <= est.window[0] < est.window[1] <= N.size


def test_methods_agree_and_ignore_order():
    rng = np.random.default_rng(0)
    seq = rng.permutation(N ** 1.7)
    a = convergence_exponent(seq, "ratio-limsup").value
    b = convergence_exponent(seq, "counting-slope").value
    assert abs(a - b) <= 0.05


def test_exponential_growth_has_exponent_zero():
    seq = np.exp(N[:600])
    assert convergence_exponent(seq, "counting-slope").value == pytest.approx(0.0, abs=0.01)
    assert convergence_exponent(seq, "ratio-limsup").value < 0.1


def test_alternating_b3_exponent():
    H = generate(preset("alternating-power", n=2**16)).hamiltonian
    b3 = b_s_sequence(H, 3)
    for method in ("ratio-limsup", "counting-slope"):
        assert convergence_exponent(b3, method).value == pytest.approx(0.5, abs=0.05)


def test_estimation_errors():
    with pytest.raises(ValueError):
        convergence_exponent(N[:10], "counting-slope")
    with pytest.raises(ValueError):
        convergence_exponent(np.r_[N, -1.0], "ratio-limsup")
    with pytest.raises(ValueError):
        convergence_exponent(N, "nonsense")


def test_lp_sum_examples():
    assert lp_sum([1, 1, 1, 1], 2) == pytest.approx(4.0)
    big = 10**6
    j = np.arange(1, big + 1, dtype=float)
    assert lp_sum(j ** -2.0, 1) == pytest.approx(math.pi ** 2 / 6, abs=1.0 / big)
    tiny = lp_sum(np.full(10, 1e-300), 1.0)
    assert tiny == pytest.approx(1e-299, rel=1e-12)
    assert log_lp_sum(np.full(10, 1e-300), 3.0) == pytest.approx(math.log(10) - 900 * math.log(10))
    assert largest_term_index([0.1, 5.0, 2.0]) == 1
    with pytest.raises(ValueError):
        lp_sum([1.0], 0.0)


@given(st.lists(st.floats(1e-12, 1.0), min_size=1, max_size=50), st.floats(0.1, 5), st.floats(0.0, 5))
def test_lp_sum_nonincreasing_in_p(seq, p, dp):
    assert lp_sum(seq, p + dp) <= lp_sum(seq, p) * (1 + 1e-12)


def test_tail_sum():
    class Gen:
        @staticmethod
        def tail(n):
            return 1.0 / n

    t = tail_sum(Gen(), 100)
    assert t.value == 0.01 and not t.truncation_only
    # exact tail of j^-2 lies in (1/(n+1), 1/n)
    t = tail_sum(lambda n: 1.0 / (n + 0.5), 100)
    assert 1 / 101 < t.value < 1 / 100 and not t.truncation_only
    seq = [1.0, 2.0, 3.0]
    assert tail_sum(seq, 3).value == 0.0 and tail_sum(seq, 3).truncation_only
    assert tail_sum(seq, 1).value == 5.0


def test_classify_series():
    n = np.arange(1, 5001, dtype=float)
    assert classify_series(n ** -2) == SUMMABLE
    assert classify_series(np.ones(500)) == DIVERGENT
    assert classify_series(1 / n) == DIVERGENT
    assert classify_series(np.zeros(100)) == SUMMABLE
    assert classify_series([1.0, 2.0]) == INCONCLUSIVE
    assert classify_series(n ** -1.1) == INCONCLUSIVE
