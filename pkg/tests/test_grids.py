import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import roots_jacobi

from gegenrl.exceptions import DomainError
from gegenrl.gegenbauer import derivative_factor, sg_eval_all
from gegenrl.grids import MAX_QUAD_DEGREE, christoffel, make_grid, sg_moments, sgg_nodes, sgirv_weights

LAMBDAS = [-0.4, -0.1351, 0.0, 0.5, 1.0, 2.0]


def beta_sum(lam):
    return math.exp(2 * math.lgamma(lam + 0.5) - math.lgamma(2 * lam + 1))


class TestNodes:
    def test_single_node(self):
        for lam in (-0.3, 0.0, 1.5):
            np.testing.assert_array_equal(sgg_nodes(0, lam), [0.5])

    def test_two_point_legendre(self):
        r = 1 / math.sqrt(3)
        np.testing.assert_allclose(sgg_nodes(1, 0.5), [(1 - r) / 2, (1 + r) / 2], atol=1e-15)

    def test_three_point_legendre(self):
        r = math.sqrt(0.6)
        np.testing.assert_allclose(sgg_nodes(2, 0.5), [(1 - r) / 2, 0.5, (1 + r) / 2], atol=1e-15)

    def test_chebyshev_closed_form(self):
        n = 9
        k = np.arange(n + 1)
        expected = np.sort((1 + np.cos((2 * k + 1) * np.pi / (2 * n + 2))) / 2)
        np.testing.assert_allclose(sgg_nodes(n, 0.0), expected, atol=2e-15)

    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_residual_order_symmetry(self, lam):
        for n in range(1, 41):
            t = sgg_nodes(n, lam)
            spacing = np.min(np.diff(t))
            assert np.all(np.diff(t) > 0) and t[0] > 0 and t[-1] < 1
            resid = np.abs(sg_eval_all(lam, n + 1, t)[:, n + 1])
            slope = np.abs(derivative_factor(lam, n + 1, 1) * sg_eval_all(lam + 1, n, t)[:, n])
            assert np.all(resid <= 1e-13 * slope * spacing), (n, lam)
            assert np.max(np.abs(t + t[::-1] - 1)) <= 1e-13

    def test_negative_size(self):
        with pytest.raises(DomainError):
            sgg_nodes(-1, 0.5)


class TestChristoffel:
    def test_small_cases(self):
        np.testing.assert_allclose(make_grid(1, 0.5).christoffel, [0.5, 0.5], rtol=1e-15)
        np.testing.assert_allclose(make_grid(0, 0.5).christoffel, [1.0], rtol=1e-15)

    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_positive_and_beta_sum(self, lam):
        for n in range(0, 41):
            w = make_grid(n, lam).christoffel
            assert np.all(w > 0)
            assert w.sum() == pytest.approx(beta_sum(lam), rel=1e-12)

    @pytest.mark.parametrize("lam", [0.0, 0.5, 1.0, 2.0])
    def test_against_golub_welsch(self, lam):
        for n in (1, 4, 15, 40):
            x, wx = roots_jacobi(n + 1, lam - 0.5, lam - 0.5)
            # map the x-weight (1 - x^2)^(lam - 1/2) dx to (t - t^2)^(lam - 1/2) dt
            ref = wx * 4.0 ** (0.5 - lam) / 2
            g = make_grid(n, lam)
            np.testing.assert_allclose(g.nodes, (x + 1) / 2, atol=1e-14)
            np.testing.assert_allclose(g.christoffel, ref, rtol=1e-12)

    @pytest.mark.parametrize("lam", [-0.4, -0.1351])
    def test_negative_index_high_precision(self, lam):
        # scipy's Gauss-Jacobi weights drift by ~5e-12 here, so use a 40-digit oracle
        n = 40
        g = make_grid(n, lam)
        with mpmath.workdps(40):
            lm = mpmath.mpf(lam)

            def G(j, t):
                x = 2 * t - 1
                a, b = mpmath.mpf(1), x
                for k in range(1, j):
                    a, b = b, (2 * (k + lm) * x * b - k * a) / (k + 2 * lm)
                return a if j == 0 else b

            head = mpmath.gamma(lm + 0.5) ** 2
            norms = [head / mpmath.gamma(2 * lm + 1)] + [
                head * mpmath.factorial(j) / (2 * (j + lm) * mpmath.gamma(j + 2 * lm))
                for j in range(1, n + 1)]
            for k in (0, 7, 20):
                t = mpmath.findroot(lambda s: G(n + 1, s), mpmath.mpf(g.nodes[k]))
                w = 1 / mpmath.fsum(G(j, t) ** 2 / norms[j] for j in range(n + 1))
                assert abs(g.nodes[k] - float(t)) <= 1e-15
                assert float(abs(g.christoffel[k] / w - 1)) <= 1e-13

    @pytest.mark.parametrize("lam", [-0.4, 0.0, 1.0])
    def test_gauss_exactness(self, lam):
        n = 6
        g = make_grid(n, lam)
        for p in range(2 * n + 2):
            exact = math.exp(math.lgamma(p + lam + 0.5) + math.lgamma(lam + 0.5)
                             - math.lgamma(p + 2 * lam + 1))
            assert g.christoffel @ g.nodes**p == pytest.approx(exact, rel=1e-13)

    def test_recomputed_from_nodes(self):
        g = make_grid(12, 1.0)
        np.testing.assert_array_equal(christoffel(g.nodes, 1.0), g.christoffel)

    @settings(max_examples=40, deadline=None)
    @given(lam=st.floats(-0.45, 3.0), n=st.integers(1, 30))
    def test_property(self, lam, n):
        g = make_grid(n, lam)
        assert np.all(g.christoffel > 0)
        assert g.christoffel.sum() == pytest.approx(beta_sum(lam), rel=1e-12)
        np.testing.assert_allclose(g.nodes + g.nodes[::-1], 1.0, atol=1e-13)


class TestGridObject:
    def test_read_only(self):
        g = make_grid(5, 0.5)
        with pytest.raises(ValueError):
            g.nodes[0] = 0.1

    def test_cached(self):
        assert make_grid(7, 0.25) is make_grid(7, 0.25)

    def test_fingerprint_distinguishes(self):
        prints = {make_grid(n, lam).fingerprint for n in (3, 4) for lam in (0.0, 0.5)}
        assert len(prints) == 4


class TestSgirv:
    def test_two_point(self):
        np.testing.assert_allclose(sgirv_weights(1, 0.5).weights, [0.5, 0.5], rtol=1e-15)

    @pytest.mark.parametrize("lam_q", LAMBDAS)
    def test_monomial_exactness(self, lam_q):
        for n_q in range(0, 41):
            q = sgirv_weights(n_q, lam_q)
            assert abs(q.weights.sum() - 1.0) <= 1e-14
            p = np.arange(n_q + 1)
            got = q.nodes[None, :] ** p[:, None] @ q.weights
            np.testing.assert_allclose(got, 1.0 / (p + 1), rtol=0, atol=1e-13)

    def test_legendre_rule_is_gauss(self):
        q = sgirv_weights(8, 0.5)
        x, w = np.polynomial.legendre.leggauss(9)
        np.testing.assert_allclose(q.weights, w / 2, rtol=1e-13)

    def test_moments(self):
        # int_0^1 T_j(2y - 1) dy = 1 / (1 - j^2) for even j, 0 for odd j
        mu = sg_moments(0.0, 10)
        j = np.arange(11)
        expected = np.zeros(11)
        expected[::2] = 1.0 / (1.0 - j[::2] ** 2.0)
        np.testing.assert_allclose(mu, expected, atol=1e-15)

    def test_degree_cap(self):
        with pytest.raises(DomainError, match="smaller n_q"):
            sgirv_weights(MAX_QUAD_DEGREE + 1, 0.5)
        with pytest.raises(DomainError):
            sgirv_weights(-1, 0.5)
