r"""Shifted Gegenbauer polynomials on ``[0, 1]``.

The family is normalized so that ``G_n(1) = 1``: with ``x = 2t - 1``,

.. math::

    G_0 = 1, \quad G_1 = x, \quad
    (n + 2\lambda) G_{n+1} = 2 (n + \lambda) x G_n - n G_{n-1}.

This is ``C_n^\lambda(x) / C_n^\lambda(1)`` for the classical
ultraspherical ``C_n^\lambda``. It stays finite at ``lambda = 0``, where it
reduces to the Chebyshev polynomials of the first kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gegenrl.exceptions import DomainError
from gegenrl.specfun import gamma, lgamma


@dataclass(frozen=True)
class SgBasis:
    """A shifted Gegenbauer family with index ``lambda_`` > -1/2."""

    lambda_: float
    max_degree: int

    def __post_init__(self):
        check_index(self.lambda_)
        if self.max_degree < 0:
            raise DomainError(f"max_degree must be >= 0, got {self.max_degree}")


def check_index(lam: float) -> None:
    if not lam > -0.5 or not math.isfinite(lam):
        raise DomainError(f"Gegenbauer index must satisfy lambda > -1/2, got {lam}")


def _as_points(t, extrapolate: bool) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if not extrapolate and (np.any(t < 0.0) or np.any(t > 1.0)):
        raise DomainError("evaluation point outside [0, 1]; pass extrapolate=True to allow")
    return t


def sg_eval_all(lam: float, n: int, t, *, extrapolate: bool = False) -> np.ndarray:
    """Values ``G_0(t), ..., G_n(t)`` in one recurrence pass.

    ``t`` may be a scalar or an array; the degree axis is appended last, so
    the result has shape ``np.shape(t) + (n + 1,)``.
    """
    check_index(lam)
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    t = _as_points(t, extrapolate)
    x = 2.0 * t - 1.0
    out = np.empty(t.shape + (n + 1,))
    out[..., 0] = 1.0
    if n >= 1:
        out[..., 1] = x
    for k in range(1, n):
        out[..., k + 1] = (2.0 * (k + lam) * x * out[..., k] - k * out[..., k - 1]) / (k + 2.0 * lam)
    return out


def sg_eval(basis: SgBasis, degree: int, t, *, extrapolate: bool = False):
    """Value of ``G_degree`` at ``t`` (scalar or array)."""
    if not 0 <= degree <= basis.max_degree:
        raise DomainError(f"degree {degree} outside 0..{basis.max_degree}")
    vals = sg_eval_all(basis.lambda_, degree, t, extrapolate=extrapolate)[..., degree]
    return vals if vals.ndim else float(vals)


def derivative_factor(lam: float, n: int, order: int) -> float:
    """Constant ``c`` with ``d^m/dt^m G_n^lam = c * G_{n-m}^{lam+m}`` (``m = order``).

    Uses ``d/dx G_n^lam = n (n + 2 lam) / (2 lam + 1) G_{n-1}^{lam+1}`` and a
    factor 2 per derivative from ``x = 2t - 1``.
    """
    c = 1.0
    for i in range(order):
        k, mu = n - i, lam + i
        c *= 2.0 * k * (k + 2.0 * mu) / (2.0 * mu + 1.0)
    return c


def sg_derivative(basis: SgBasis, j: int, t, order: int = 1, *, extrapolate: bool = False):
    """``order``-th derivative of ``G_j`` with respect to ``t``."""
    if order < 1:
        raise DomainError(f"derivative order must be >= 1, got {order}")
    if not 0 <= j <= basis.max_degree:
        raise DomainError(f"degree {j} outside 0..{basis.max_degree}")
    t = _as_points(t, extrapolate)
    if order > j:
        vals = np.zeros(t.shape)
    else:
        shifted = sg_eval_all(basis.lambda_ + order, j - order, t, extrapolate=extrapolate)
        vals = derivative_factor(basis.lambda_, j, order) * shifted[..., j - order]
    return vals if vals.ndim else float(vals)


def norm_lambda_bar(lam: float, n: int) -> np.ndarray:
    r"""Squared weighted norms ``int_0^1 G_j(t)^2 (t - t^2)^(lam - 1/2) dt``, j = 0..n.

    For the ``G_n(1) = 1`` family these are

    .. math::

        \bar\lambda_0 = \frac{\Gamma(\lambda + 1/2)^2}{\Gamma(2\lambda + 1)}, \qquad
        \bar\lambda_j = \frac{\Gamma(\lambda + 1/2)^2\, j!}{2 (j + \lambda) \Gamma(j + 2\lambda)}.

    Both are finite at ``lambda = 0`` (Chebyshev: ``pi`` and ``pi / 2``).
    """
    check_index(lam)
    out = np.empty(n + 1)
    head = 2.0 * lgamma(lam + 0.5)
    out[0] = math.exp(head - lgamma(2.0 * lam + 1.0))
    for j in range(1, n + 1):
        out[j] = math.exp(head + lgamma(j + 1.0) - lgamma(j + 2.0 * lam)) / (2.0 * (j + lam))
    return out


def classical_norm(lam: float, j: int) -> float:
    r"""Shifted norm of the classical ``C_j^lam`` (leading coefficient ``2^j (lam)_j / j!``).

    ``pi 2^(1 - 4 lam) Gamma(j + 2 lam) / (j! Gamma(lam)^2 (j + lam))``; agrees
    with :func:`norm_lambda_bar` only where ``C_j^lam(1) = 1`` (``lam = 1/2``
    or ``j = 0``).
    """
    check_index(lam)
    if lam == 0.0:
        raise DomainError("classical C_j^0 vanishes identically; use norm_lambda_bar")
    return (math.pi * 2.0 ** (1.0 - 4.0 * lam) * gamma(j + 2.0 * lam)
            / (math.factorial(j) * gamma(lam) ** 2 * (j + lam)))


def leading_coeff(lam: float, n: int, *, log: bool = False) -> float:
    """Leading coefficient of ``G_n`` in the unshifted variable ``x``.

    ``2^(n-1) Gamma(2 lam + 1) Gamma(n + lam) / (Gamma(lam + 1) Gamma(n + 2 lam))``.
    The coefficient in ``t`` is larger by ``2^n``. With ``log=True`` the
    natural log is returned, which stays finite for very large ``n``.
    """
    check_index(lam)
    if n == 0:
        return 0.0 if log else 1.0
    value = ((n - 1) * math.log(2.0) + lgamma(2.0 * lam + 1.0) + lgamma(n + lam)
             - lgamma(lam + 1.0) - lgamma(n + 2.0 * lam))
    return value if log else math.exp(value)
