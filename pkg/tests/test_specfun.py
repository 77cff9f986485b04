import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gegenrl.exceptions import ConvergenceError, DomainError
from gegenrl.specfun import (
    SeriesResult,
    gamma,
    gamma_sign,
    hyp1f1,
    hyp2f1_terminating,
    lambert_w0,
    lgamma,
)


class TestGamma:
    def test_known_values(self):
        assert gamma(0.5) == pytest.approx(1.7724538509055160, rel=1e-15)
        assert gamma(5) == 24.0
        assert gamma(2.5) == pytest.approx(1.3293403881791370, rel=1e-15)

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -170.0])
    def test_poles(self, x):
        with pytest.raises(DomainError):
            gamma(x)
        with pytest.raises(DomainError):
            lgamma(x)

    @pytest.mark.parametrize("x", [-169.5, -20.3, -0.5, 1e-3, 7.25, 100.1, 170.5])
    def test_against_mpmath(self, x):
        assert gamma(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-14)

    def test_sign(self):
        assert gamma_sign(3.2) == 1.0
        assert gamma_sign(-0.5) == -1.0
        assert gamma_sign(-1.5) == 1.0

    def test_recurrence_random(self):
        rng = np.random.default_rng(0)
        for x in rng.uniform(0.1, 60.0, 1000):
            assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-13)


class TestLambertW:
    def test_fixed_points(self):
        assert lambert_w0(0.0) == 0.0
        assert lambert_w0(math.e) == pytest.approx(1.0, rel=1e-15)
        assert lambert_w0(-1.0 / math.e) == pytest.approx(-1.0, abs=1e-7)

    def test_half_e(self):
        w = lambert_w0(math.e / 2.0)
        assert w == pytest.approx(float(mpmath.lambertw(mpmath.e / 2).real), rel=1e-15)
        assert round(w, 4) == 0.6851
        assert abs(w * math.exp(w) - math.e / 2.0) <= 1e-14 * math.e / 2.0

    def test_residual_grid(self):
        xs = np.concatenate([-1.0 / math.e + np.logspace(-6, math.log10(1.0 / math.e), 200),
                             np.logspace(-8, 3, 400)])
        for x in xs:
            w = lambert_w0(x)
            assert abs(w * math.exp(w) - x) <= 1e-14 * max(1.0, abs(x)), x

    def test_matches_mpmath(self):
        for x in [-0.3, -0.01, 0.5, 10.0, 1e3]:
            assert lambert_w0(x) == pytest.approx(float(mpmath.lambertw(x).real), rel=1e-14)

    def test_below_branch_point(self):
        with pytest.raises(DomainError):
            lambert_w0(-0.4)


class TestHyp1f1:
    def test_zero_argument(self):
        res = hyp1f1(0.3, 1.7, 0.0)
        assert res == SeriesResult(1.0, 1, True)

    def test_exponential_identity(self):
        assert hyp1f1(1, 2, 1).value == pytest.approx(math.e - 1.0, rel=1e-15)

    def test_erf_identity(self):
        z = 0.5
        expected = math.sqrt(math.pi) / 2.0 * math.erf(math.sqrt(z)) / math.sqrt(z)
        assert hyp1f1(0.5, 1.5, -z).value == pytest.approx(expected, rel=1e-15)

    def test_converged_flag_and_tolerance(self):
        res = hyp1f1(0.5, 1.5, 3.0)
        assert res.converged and res.terms_used >= 1

    def test_nonpositive_c(self):
        with pytest.raises(DomainError):
            hyp1f1(1.0, -2.0, 0.5)

    def test_term_cap(self):
        with pytest.raises(ConvergenceError) as info:
            hyp1f1(1.0, 2.0, 40.0, max_terms=5)
        assert info.value.iterations == 5

    @settings(max_examples=60, deadline=None)
    @given(a=st.floats(0.05, 5.0), c=st.floats(0.1, 6.0), z=st.floats(-50.0, 50.0))
    def test_matches_high_precision(self, a, c, z):
        with mpmath.workdps(40):
            ref = float(mpmath.hyp1f1(a, c, z))
        assert hyp1f1(a, c, z).value == pytest.approx(ref, rel=1e-12)


class TestHyp2f1Terminating:
    def test_two_terms(self):
        for t in (0.0, 0.3, 1.0):
            assert hyp2f1_terminating(-1, 1.0, 1.2, t) == pytest.approx(1.0 - t / 1.2, rel=1e-15)

    def test_four_terms_by_hand(self):
        # (1)_k cancels k!, leaving (-3)_k / (1.2)_k * 0.5^k
        expected = 1.0 - 1.5 / 1.2 + 1.5 / (1.2 * 2.2) - 0.75 / (1.2 * 2.2 * 3.2)
        assert hyp2f1_terminating(-3, 1.0, 1.2, 0.5) == pytest.approx(expected, rel=1e-15)

    def test_zero_argument(self):
        assert hyp2f1_terminating(-1, 1.0, 3.0, 0.0) == 1.0

    def test_pole_in_sum(self):
        with pytest.raises(DomainError):
            hyp2f1_terminating(-4, 1.0, -2.0, 0.5)

    def test_rejects_nonterminating(self):
        with pytest.raises(DomainError):
            hyp2f1_terminating(2, 1.0, 1.0, 0.5)

    @pytest.mark.parametrize("k", range(12))
    def test_backward_stable(self, k):
        # alternating terms cancel, so the error is measured against sum |term|
        a = -2 * k - 1
        with mpmath.workdps(40):
            ref = mpmath.hyp2f1(a, 1, 1.2, 0.7)
            size = sum(abs(mpmath.rf(a, j) / mpmath.rf(1.2, j) * mpmath.mpf(0.7) ** j)
                       for j in range(-a + 1))
            err = abs(hyp2f1_terminating(a, 1.0, 1.2, 0.7) - ref)
        assert err <= 4 * 2.0**-52 * size
