r"""Gegenbauer-based approximation of the left Riemann-Liouville integral.

For ``0 < alpha < 1`` the left fractional integral

.. math::

    I^\alpha f(t) = \frac{1}{\Gamma(\alpha)} \int_0^t (t - \tau)^{\alpha - 1} f(\tau)\,d\tau

becomes, after ``tau = t (1 - y^(1/alpha))``,

.. math::

    I^\alpha f(t) = \frac{t^\alpha}{\Gamma(\alpha + 1)} \int_0^1 f(t (1 - y^{1/\alpha}))\,dy,

whose integrand is smooth. Replacing ``f`` by its interpolant on the
shifted Gegenbauer-Gauss nodes and integrating each basis polynomial with
the unweighted Gauss-node rule gives a matrix that maps node samples of
``f`` to integral values at arbitrary points. The matrix only depends on
``(alpha, n, lambda, n_q, lambda_q, points)`` and is built once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from gegenrl.exceptions import DomainError, GridMismatchError
from gegenrl.gegenbauer import sg_eval_all
from gegenrl.grids import Grid, QuadRule, grid_fingerprint, make_grid, sgirv_weights


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"fractional order must lie in (0, 1), got {alpha}")
    return alpha


def _check_points(points) -> np.ndarray:
    z = np.atleast_1d(np.asarray(points, dtype=float))
    if z.ndim != 1:
        raise DomainError("evaluation points must be a 1-D sequence")
    if not np.all(np.isfinite(z)) or np.any(z < 0.0) or np.any(z > 1.0):
        raise DomainError("evaluation points must lie in [0, 1]")
    return z


@dataclass(frozen=True, eq=False)
class SampleVector:
    """Function values at the nodes of the grid identified by ``fingerprint``."""

    values: np.ndarray
    fingerprint: str

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise DomainError("sample values must be finite")


def sample(f: Callable, grid: Grid) -> SampleVector:
    """Evaluate ``f`` at the nodes of ``grid`` (``f`` must accept arrays)."""
    values = np.asarray(f(grid.nodes), dtype=float)
    values = np.broadcast_to(values, grid.nodes.shape).copy()
    return SampleVector(values, grid.fingerprint)


def cardinal_matrix(grid: Grid, t) -> np.ndarray:
    """All cardinal polynomials at ``t``: shape ``(len(t), n + 1)``."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    gt = sg_eval_all(grid.lambda_, grid.n, t)
    gk = sg_eval_all(grid.lambda_, grid.n, grid.nodes) / grid.norms
    return (gt @ gk.T) * grid.christoffel


def cardinal_eval(grid: Grid, k: int, t):
    """Cardinal polynomial ``L_k`` at ``t`` (1 at node ``k``, 0 at the others)."""
    if not 0 <= k <= grid.n:
        raise DomainError(f"cardinal index {k} outside 0..{grid.n}")
    vals = cardinal_matrix(grid, t)[:, k]
    return vals if np.ndim(t) else float(vals[0])


def interpolate(grid: Grid, samples, t):
    """Value of the node interpolant of ``samples`` at ``t``."""
    values = _sample_values(samples, grid.n, grid.fingerprint)
    out = cardinal_matrix(grid, t) @ values
    return out if np.ndim(t) else float(out[0])


def modal_integrals(lam: float, n: int, points, alpha: float, quad: QuadRule) -> np.ndarray:
    """``int_0^1 G_j(z (1 - y^(1/alpha))) dy`` by ``quad``, shape ``(len(points), n + 1)``."""
    alpha = check_alpha(alpha)
    z = _check_points(points)
    inner = 1.0 - quad.nodes ** (1.0 / alpha)
    args = np.clip(z[:, None] * inner[None, :], 0.0, 1.0)
    return np.einsum("q,mqj->mj", quad.weights, sg_eval_all(lam, n, args))


def modal_integral(j: int, t: float, alpha: float, quad: QuadRule, lam: float) -> float:
    """Single entry of :func:`modal_integrals`."""
    return float(modal_integrals(lam, j, [t], alpha, quad)[0, j])


@dataclass(frozen=True, eq=False)
class Fsgim:
    """Fractional integration matrix together with its build parameters.

    ``scaled @ f(grid nodes)`` approximates the integral at ``points``;
    ``generator`` is the same matrix before the row scaling by
    ``points**alpha / Gamma(alpha + 1)``.
    """

    alpha: float
    n: int
    lambda_: float
    n_q: int
    lambda_q: float
    points: np.ndarray
    grid_nodes: np.ndarray
    quad_nodes: np.ndarray
    quad_weights: np.ndarray
    generator: np.ndarray
    scaled: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def M(self) -> int:
        return len(self.points) - 1

    @property
    def fingerprint(self) -> str:
        return grid_fingerprint(self.n, self.lambda_, self.grid_nodes)

    def __eq__(self, other):
        if not isinstance(other, Fsgim):
            return NotImplemented
        scalars = ("alpha", "n", "lambda_", "n_q", "lambda_q", "meta")
        arrays = ("points", "grid_nodes", "quad_nodes", "quad_weights", "generator", "scaled")
        return (all(getattr(self, s) == getattr(other, s) for s in scalars)
                and all(np.array_equal(getattr(self, a), getattr(other, a)) for a in arrays))

    __hash__ = None


def build_fsgim(grid: Grid, quad: QuadRule, alpha: float, points) -> Fsgim:
    """Assemble the integration matrix for ``points``.

    Cost is ``O(M n (n + n_q))``: one recurrence per transformed quadrature
    node and point, then a ``(M+1, n+1) x (n+1, n+1)`` product.
    """
    alpha = check_alpha(alpha)
    z = _check_points(points)
    modal = modal_integrals(grid.lambda_, grid.n, z, alpha, quad)
    at_nodes = sg_eval_all(grid.lambda_, grid.n, grid.nodes) / grid.norms
    generator = (modal @ at_nodes.T) * grid.christoffel
    scale = z**alpha / math.gamma(alpha + 1.0)
    scaled = scale[:, None] * generator
    scaled[z == 0.0] = 0.0

    from gegenrl import __version__
    return Fsgim(
        alpha=alpha, n=grid.n, lambda_=grid.lambda_, n_q=quad.n_q, lambda_q=quad.lambda_q,
        points=z.copy(), grid_nodes=np.array(grid.nodes), quad_nodes=np.array(quad.nodes),
        quad_weights=np.array(quad.weights), generator=generator, scaled=scaled,
        meta={"library": "gegenrl", "version": __version__},
    )


def _sample_values(samples, n: int, fingerprint: str) -> np.ndarray:
    if isinstance(samples, SampleVector):
        if samples.fingerprint != fingerprint:
            raise GridMismatchError("samples were taken on a different grid")
        values = samples.values
    else:
        values = np.asarray(samples, dtype=float)
    if values.shape[-1] != n + 1:
        raise GridMismatchError(f"expected {n + 1} samples, got {values.shape[-1]}")
    return values


def apply(fsgim: Fsgim, samples) -> np.ndarray:
    """Integral values at ``fsgim.points`` from node samples.

    ``samples`` is a :class:`SampleVector` (grid-checked) or a plain array of
    length ``n + 1``; a 2-D array applies the matrix to each row.
    """
    values = _sample_values(samples, fsgim.n, fsgim.fingerprint)
    return values @ fsgim.scaled.T


def eval_rlfi(f: Callable, n: int, lam: float, n_q: int, lam_q: float,
              alpha: float, points) -> np.ndarray:
    """One-shot approximation of the left fractional integral of ``f`` at ``points``."""
    grid = make_grid(n, lam)
    quad = sgirv_weights(n_q, lam_q)
    return apply(build_fsgim(grid, quad, alpha, points), sample(f, grid))
