"""Shifted Gegenbauer-Gauss nodes, Christoffel numbers and the unweighted rule.

A :class:`Grid` carries the interpolation nodes together with the Gauss
weights for the weight ``(t - t^2)^(lambda - 1/2)``. A :class:`QuadRule`
carries the same kind of nodes with weights for the *unweighted* integral
over ``[0, 1]`` (the integration row vector applied to the transformed
kernel integrals).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eigh_tridiagonal

from gegenrl.exceptions import ConvergenceError, DomainError
from gegenrl.gegenbauer import check_index, derivative_factor, norm_lambda_bar, sg_eval_all

MAX_QUAD_DEGREE = 120


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Grid:
    """Interpolation grid: the ``n + 1`` zeros of ``G_{n+1}`` on ``(0, 1)``."""

    n: int
    lambda_: float
    nodes: np.ndarray
    christoffel: np.ndarray
    norms: np.ndarray

    @property
    def fingerprint(self) -> str:
        """Hex digest identifying ``(n, lambda, nodes)``; used to catch wrong-grid samples."""
        return grid_fingerprint(self.n, self.lambda_, self.nodes)


@dataclass(frozen=True, eq=False)
class QuadRule:
    """Nodes of ``G_{n_q+1}^{lambda_q}`` with weights for ``int_0^1 p(y) dy``."""

    n_q: int
    lambda_q: float
    nodes: np.ndarray
    weights: np.ndarray


def grid_fingerprint(n: int, lam: float, nodes: np.ndarray) -> str:
    h = hashlib.sha256()
    h.update(np.asarray([n, lam], dtype="<f8").tobytes())
    h.update(np.ascontiguousarray(nodes, dtype="<f8").tobytes())
    return h.hexdigest()[:32]


def _jacobi_offdiag(n: int, lam: float) -> np.ndarray:
    """Off-diagonal of the symmetric Jacobi matrix for the weight (1 - x^2)^(lam - 1/2)."""
    k = np.arange(2, n + 1, dtype=float)
    b2 = np.empty(n)
    b2[0] = 1.0 / (2.0 * (1.0 + lam))
    b2[1:] = k * (k + 2 * lam - 1) / (4 * (k + lam) * (k + lam - 1))
    return np.sqrt(b2)


def sgg_nodes(n: int, lam: float) -> np.ndarray:
    """The ``n + 1`` zeros of ``G_{n+1}^lam`` mapped to ``(0, 1)``, ascending.

    Eigenvalues of the Jacobi matrix give the starting values, a few Newton
    steps in ``t`` polish them, and the lower half is mirrored onto the
    upper half so that ``t_k + t_{n-k} = 1``.
    """
    check_index(lam)
    if n < 0:
        raise DomainError(f"grid size must be >= 0, got {n}")
    if n == 0:
        return np.array([0.5])

    x = eigh_tridiagonal(np.zeros(n + 1), _jacobi_offdiag(n, lam), eigvals_only=True)
    t = np.clip((np.sort(x) + 1.0) / 2.0, 0.0, 1.0)

    dfac = derivative_factor(lam, n + 1, 1)
    for _ in range(3):
        g = sg_eval_all(lam, n + 1, t)[:, n + 1]
        dg = dfac * sg_eval_all(lam + 1.0, n, t)[:, n]
        step = g / dg
        t = t - step
        if np.all(np.abs(step) <= 1e-16 * np.maximum(t, 1e-300)):
            break
    if not np.all(np.isfinite(t)) or np.any(np.diff(t) <= 0) or t[0] <= 0 or t[-1] >= 1:
        raise ConvergenceError(f"node computation failed for n={n}, lambda={lam}")

    half = (n + 1) // 2
    t[n + 1 - half:] = 1.0 - t[:half][::-1]
    if n % 2 == 0:
        t[n // 2] = 0.5
    return t


def christoffel(nodes: np.ndarray, lam: float, norms: np.ndarray | None = None) -> np.ndarray:
    """Christoffel numbers ``1 / sum_j G_j(t_k)^2 / norm_j`` at the given nodes."""
    n = len(nodes) - 1
    if norms is None:
        norms = norm_lambda_bar(lam, n)
    g = sg_eval_all(lam, n, nodes)
    return 1.0 / ((g * g) @ (1.0 / norms))


@lru_cache(maxsize=64)
def _build_grid(n: int, lam: float) -> Grid:
    nodes = sgg_nodes(n, lam)
    norms = norm_lambda_bar(lam, n)
    return Grid(n, lam, _frozen(nodes), _frozen(christoffel(nodes, lam, norms)), _frozen(norms))


def make_grid(n: int, lam: float) -> Grid:
    """Build (or fetch from cache) the interpolation grid for ``(n, lam)``."""
    return _build_grid(int(n), float(lam))


def sg_moments(lam: float, n: int) -> np.ndarray:
    """Unweighted integrals ``int_0^1 G_j(y) dy`` for j = 0..n.

    Evaluated with an ``n // 2 + 1`` point Gauss-Legendre rule, which is
    exact for these degree-``n`` polynomials.
    """
    x, w = leggauss(n // 2 + 1)
    return 0.5 * (w @ sg_eval_all(lam, n, (x + 1.0) / 2.0))


@lru_cache(maxsize=64)
def _build_quad(n_q: int, lam_q: float) -> QuadRule:
    grid = make_grid(n_q, lam_q)
    coeffs = sg_moments(lam_q, n_q) / grid.norms
    weights = grid.christoffel * (sg_eval_all(lam_q, n_q, grid.nodes) @ coeffs)
    return QuadRule(n_q, lam_q, grid.nodes, _frozen(weights))


def sgirv_weights(n_q: int, lam_q: float) -> QuadRule:
    """Interpolatory rule on the ``(n_q, lam_q)`` nodes for ``int_0^1 p(y) dy``.

    Each cardinal polynomial is expanded in the Gegenbauer basis via the
    discrete orthogonality of the Gauss rule and integrated term by term,
    so the rule is exact for every polynomial of degree ``<= n_q``.
    """
    check_index(lam_q)
    if n_q < 0:
        raise DomainError(f"n_q must be >= 0, got {n_q}")
    if n_q > MAX_QUAD_DEGREE:
        raise DomainError(
            f"n_q={n_q} exceeds {MAX_QUAD_DEGREE}; the weight construction is "
            "ill-conditioned there, use a smaller n_q")
    return _build_quad(int(n_q), float(lam_q))
