"""Error model and parameter advice for the Gegenbauer fractional integral.

Only the computable pieces live here: the interpolation bound constant
``vartheta`` and its factors ``t1, t2, t3``, the maximizer ``lambda_star``
of ``t1``, the quadrature growth factor ``chi``, the asymptotic constant
``theta_const``, the closed-form interpolation truncation error and the
exponential-decay test for the quadrature error. Bounds that involve
constants known only to exist (``sigma``, ``rho``, ``D``, ...) take them as
caller inputs and are flagged as asymptotic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from gegenrl.core import check_alpha, modal_integrals
from gegenrl.exceptions import DomainError
from gegenrl.gegenbauer import check_index, leading_coeff
from gegenrl.grids import sgirv_weights
from gegenrl.specfun import lambert_w0, lgamma

ASYMPTOTIC_CAVEAT = "asymptotic; unspecified constants taken as caller inputs (default 1)"

# Width of the excluded neighbourhood around lambda_star and the admissible
# index range [-1/2 + EPSILON, R_MAX].
DELTA = 0.02
EPSILON = 0.01
R_MAX = 2.0


def _log_sinh(x: float) -> float:
    if x > 20.0:
        return x - math.log(2.0) + math.log1p(-math.exp(-2.0 * x))
    return math.log(math.sinh(x))


def log_t1(lam: float) -> float:
    check_index(lam)
    return (-0.5 - 2.0 * lam) * math.log1p(2.0 * lam)


def log_t2(lam: float) -> float:
    check_index(lam)
    u = 1.0 + 2.0 * lam
    return (0.5 + lam) * (math.log1p(lam) - _log_sinh(1.0 / u) - math.log(u))


def log_t3(lam: float) -> float:
    check_index(lam)
    return 0.5 * (1.0 + lam) * (math.log1p(lam) + _log_sinh(1.0 / (1.0 + lam)))


def t1(lam: float) -> float:
    """``(1 + 2 lam)^(-1/2 - 2 lam)``."""
    return math.exp(log_t1(lam))


def t2(lam: float) -> float:
    """``[(1 + lam) csch(1 / (1 + 2 lam)) / (1 + 2 lam)]^(1/2 + lam)``."""
    return math.exp(log_t2(lam))


def t3(lam: float) -> float:
    """``[(1 + lam) sinh(1 / (1 + lam))]^((1 + lam) / 2)``."""
    return math.exp(log_t3(lam))


def vartheta(alpha: float, lam: float) -> float:
    """Leading constant of the asymptotic interpolation error bound.

    ``alpha`` may be any positive number here (the bound is studied beyond
    the unit interval); ``lam > -1/2``. Evaluated in log space.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    check_index(lam)
    log_val = (
        -math.log(4.0 * math.pi)
        + alpha + 1.0
        + (-0.5 - alpha) * math.log(alpha)
        + log_t1(lam)
        + math.log1p(1.0 / (1620.0 * (1.0 + lam) ** 5))
        + log_t2(lam)
        - 0.5 * alpha * (math.log(alpha) + _log_sinh(1.0 / alpha))
        + log_t3(lam)
    )
    return math.exp(log_val)


def lambda_star() -> float:
    """Maximizer of ``t1`` on ``(-1/2, 0)``: ``(exp(W(e/2)) - e) / (2e)``."""
    return (math.exp(lambert_w0(math.e / 2.0)) - math.e) / (2.0 * math.e)


def theta_const(lambda_q: float) -> float:
    """``sqrt(2 pi) Gamma(2 lambda_q + 1) / Gamma(lambda_q + 1)``."""
    check_index(lambda_q)
    return math.exp(0.5 * math.log(2.0 * math.pi) + lgamma(2.0 * lambda_q + 1.0)
                    - lgamma(lambda_q + 1.0))


def chi(n: int, m: int, lam: float) -> float:
    """Growth factor of the quadrature error for degree ``n`` and ``m`` derivatives.

    ``n! Gamma(lam + 1/2) Gamma(n + m + 2 lam) /
    ((n - m)! Gamma(n + 2 lam) Gamma(m + lam + 1/2))`` via log-gamma.
    """
    check_index(lam)
    if n < m or m < 0:
        raise DomainError(f"chi needs n >= m >= 0, got n={n}, m={m}")
    if m == 0:
        return 1.0
    # m >= 1 and n >= m keep every gamma argument positive
    log_val = (lgamma(n + 1.0) + lgamma(lam + 0.5) + lgamma(n + m + 2.0 * lam)
               - lgamma(n - m + 1.0) - lgamma(n + 2.0 * lam) - lgamma(m + lam + 0.5))
    return math.exp(log_val)


def shifted_leading_coeff(lam: float, n: int, *, log: bool = False) -> float:
    """Leading coefficient of ``G_n`` as a polynomial in ``t`` (``2^n`` times the ``x`` one)."""
    value = n * math.log(2.0) + leading_coeff(lam, n, log=True)
    return value if log else math.exp(value)


def truncation_closed_form(n: int, alpha: float, lam: float, t: float, deriv_value: float) -> float:
    """Interpolation part of the error at ``t`` for a given ``f^(n+1)(xi)``.

    ``t^alpha f^(n+1)(xi) / ((n+1)! Gamma(alpha+1) K_{n+1}) *
    int_0^1 G_{n+1}(t (1 - y^(1/alpha))) dy`` with ``K_{n+1}`` the leading
    coefficient in ``t``, so that ``G_{n+1} / K_{n+1}`` is the monic node
    polynomial. The integral uses a Gauss-node rule with ``n + 16`` points.
    Passing a derivative bound ``A_{n+1}`` gives the magnitude estimate.
    """
    alpha = check_alpha(alpha)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    if deriv_value == 0.0 or t == 0.0:
        return 0.0
    quad = sgirv_weights(n + 16, 0.5)
    integral = modal_integrals(lam, n + 1, [t], alpha, quad)[0, n + 1]
    log_scale = (alpha * math.log(t) - lgamma(n + 2.0) - lgamma(alpha + 1.0)
                 - shifted_leading_coeff(lam, n + 1, log=True))
    return deriv_value * integral * math.exp(log_scale)


def decay_condition(alpha: float, t: float, eta: float) -> bool:
    """Whether ``alpha > 2 t eta^(1/alpha - 1)`` (quadrature error decays when ``n ~ n_q``)."""
    if not 0.0 < eta < 1.0:
        raise DomainError(f"eta must lie in (0, 1), got {eta}")
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    return alpha > 2.0 * t * eta ** (1.0 / alpha - 1.0)


def interpolation_bound(n: int, alpha: float, lam: float, a_next: float = 1.0,
                        sigma: float = 1.0) -> float:
    """``A_{n+1} vartheta (e/4)^n n^(-3/2 - n + lam) Upsilon`` (asymptotic, large ``n``).

    ``Upsilon`` is 1 for ``lam >= 0`` and ``sigma n^(-lam)`` for negative ``lam``.
    """
    if n < 1:
        raise DomainError("interpolation bound needs n >= 1")
    log_val = (math.log(vartheta(alpha, lam)) + n * (1.0 - math.log(4.0))
               + (-1.5 - n + lam) * math.log(n))
    if lam < 0:
        log_val += math.log(sigma) - lam * math.log(n)
    return a_next * math.exp(log_val)


def quadrature_regime(n: int, n_q: int) -> str:
    """``"exact"`` when ``n_q >= n``, ``"n>>n_q"`` when ``n >= 2 n_q``, else ``"n~n_q"``."""
    if n_q >= n:
        return "exact"
    if n >= 2 * n_q:
        return "n>>n_q"
    return "n~n_q"


def upsilon2_label(lam: float, lam_q: float) -> str:
    """Which case of the combined correction factor applies (a label, not a number)."""
    neg, neg_q = lam < 0, lam_q < 0
    if not neg and not neg_q:
        return "1"
    if neg and not neg_q:
        return "D n^-lambda"
    if not neg and neg_q:
        return "rho n_q^-lambda_q"
    return "D rho n^-lambda n_q^-lambda_q"


@dataclass
class ErrorReport:
    interp_bound: float
    truncation_closed_form: float
    vartheta: float
    decay_ok: bool
    quadrature_regime: str
    upsilon2_case: str
    asymptotic: bool = True
    advisory_notes: list[str] = field(default_factory=list)


def error_report(n: int, n_q: int, alpha: float, lam: float, lam_q: float, t: float,
                 a_next: float = 1.0, eta: float = 0.5, sigma: float = 1.0) -> ErrorReport:
    """Collect the computable error-model components for one configuration.

    ``a_next`` bounds ``|f^(n+1)|`` and ``eta`` stands for the unknown
    mean-value point of the quadrature error.
    """
    notes = [ASYMPTOTIC_CAVEAT]
    regime = quadrature_regime(n, n_q)
    decay = decay_condition(alpha, t, eta)
    if regime == "n>>n_q":
        notes.append("n >> n_q: the quadrature error may grow unless t eta^(1/alpha-1)/alpha is small")
    elif regime == "n~n_q" and not decay:
        notes.append("n ~ n_q but the exponential-decay condition fails at this (alpha, t, eta)")
    if abs(lam - lambda_star()) < DELTA:
        notes.append("lambda lies in the neighbourhood of lambda_star where vartheta peaks")
    return ErrorReport(
        interp_bound=interpolation_bound(n, alpha, lam, a_next, sigma),
        truncation_closed_form=truncation_closed_form(n, alpha, lam, t, a_next),
        vartheta=vartheta(alpha, lam),
        decay_ok=decay,
        quadrature_regime=regime,
        upsilon2_case=upsilon2_label(lam, lam_q),
        advisory_notes=notes,
    )


@dataclass(frozen=True)
class ParamAdvice:
    lambda_: float
    lambda_q: float
    mode: str
    rationale: str
    lambda_range: tuple[float, float]
    excluded: tuple[float, float] | None = None
    lambda_q_upper: float | None = None


def advise_params(n: int, n_q: int, mode: str = "standard", eps: float = EPSILON,
                  r: float = R_MAX, delta: float = DELTA) -> ParamAdvice:
    """Recommend ``(lambda, lambda_q)``.

    ``standard`` returns the shifted Chebyshev choice ``(0, 0)``. ``precision``
    keeps ``lambda`` in ``[-1/2 + eps, 0]`` away from ``lambda_star``, and
    bounds ``lambda_q`` by ``lambda`` when ``n ~ n_q`` or by 3/2 when
    ``n >> n_q``. Both indices stay inside ``[-1/2 + eps, r]``.
    """
    if not 0 < eps < 0.5 or not 1.0 <= r <= 2.0:
        raise DomainError("need 0 < eps < 1/2 and 1 <= r <= 2")
    admissible = (-0.5 + eps, r)
    if mode == "standard":
        return ParamAdvice(0.0, 0.0, mode, "shifted Chebyshev interpolation and quadrature",
                           admissible)
    if mode != "precision":
        raise DomainError(f"unknown mode {mode!r}; use 'standard' or 'precision'")

    ls = lambda_star()
    lam = 0.0
    lam_range = (-0.5 + eps, 0.0)
    excluded = (ls - delta, ls + delta)
    if quadrature_regime(n, n_q) == "n>>n_q":
        upper = 1.5
        lam_q = 0.5
        why = (f"n={n} >> n_q={n_q}: lambda_q < 3/2 speeds up the quadrature error decay; "
               "lambda_q = 0.5 sits inside that range")
    else:
        upper = lam
        lam_q = max(lam - 0.1, admissible[0])
        why = f"n={n} ~ n_q={n_q}: lambda_q < lambda gives the factor n_q^(lambda_q - lambda)"
    rationale = (f"lambda in [{lam_range[0]:g}, 0] outside ({excluded[0]:.4f}, {excluded[1]:.4f}) "
                 f"around lambda_star={ls:.4f}; " + why)
    return ParamAdvice(lam, lam_q, mode, rationale, lam_range, excluded, upper)
