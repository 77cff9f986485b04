"""Ground truth for the left Riemann-Liouville integral.

Closed forms for power, exponential, cubic-plus-linear and ``sin(1 - t)``
test functions, plus an adaptive Gauss-Kronrod oracle that shares no code
with the Gegenbauer machinery it is used to check.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from gegenrl.exceptions import ConvergenceError, DomainError
from gegenrl.specfun import hyp1f1, hyp2f1_terminating

# Kronrod 15-point abscissae (non-negative half) and weights; the Gauss
# 7-point rule uses every other abscissa.
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_X15 = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_W15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W7 = np.zeros(15)
_W7[1:7:2] = _WG[:3]
_W7[7] = _WG[3]
_W7[9:15:2] = _WG[2::-1]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class OracleConfig:
    abs_tol: float = 1e-15
    rel_tol: float = 1e-14
    max_subdivisions: int = 4000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("oracle tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    panels: int


def _panel(g, a, b):
    """K15 value, |K15 - G7| and a roundoff floor for one panel."""
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    fx = np.asarray(g(mid + half * _X15), dtype=float)
    k15 = half * (_W15 @ fx)
    g7 = half * (_W7 @ fx)
    roundoff = 50.0 * _EPS * half * (_W15 @ np.abs(fx))
    return k15, abs(k15 - g7), roundoff


def adaptive_gk15(g: Callable, a: float, b: float, cfg: OracleConfig = OracleConfig()) -> QuadResult:
    """Globally adaptive 7/15 Gauss-Kronrod integration of ``g`` over ``[a, b]``.

    The panel with the largest error estimate ``|K15 - G7|`` is bisected
    until the summed estimate meets ``max(abs_tol, rel_tol * |value|)``.
    Panels whose estimate is already at the roundoff floor are not split.
    ``g`` must accept a NumPy array of abscissae.
    """
    heap = []

    def push(lo, hi):
        v, e, r = _panel(g, lo, hi)
        # floored panels get priority 0 and are never chosen for splitting
        heapq.heappush(heap, (-(e if e > r else 0.0), lo, hi, v, max(e, r)))

    push(a, b)
    panels = 1
    while True:
        total = math.fsum(item[3] for item in heap)
        open_err = math.fsum(-item[0] for item in heap)
        if open_err <= max(cfg.abs_tol, cfg.rel_tol * abs(total)) or heap[0][0] == 0.0:
            break
        if panels >= cfg.max_subdivisions:
            raise ConvergenceError(
                f"oracle exhausted {cfg.max_subdivisions} panels (error estimate {open_err:.3g})",
                estimate=total, iterations=panels)
        _, lo, hi, _, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        push(lo, mid)
        push(mid, hi)
        panels += 1
    return QuadResult(total, math.fsum(item[4] for item in heap), panels)


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    return t


def oracle_rlfi_result(f: Callable, alpha: float, t: float,
                       cfg: OracleConfig = OracleConfig()) -> QuadResult:
    """Oracle value together with its error estimate (already scaled)."""
    t = _check_t(t)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if t == 0.0:
        return QuadResult(0.0, 0.0, 0)
    scale = t**alpha / math.gamma(alpha + 1.0)
    inner = adaptive_gk15(lambda y: f(t * (1.0 - y ** (1.0 / alpha))), 0.0, 1.0,
                          OracleConfig(cfg.abs_tol / scale, cfg.rel_tol, cfg.max_subdivisions))
    return QuadResult(scale * inner.value, scale * inner.error, inner.panels)


def oracle_rlfi(f: Callable, alpha: float, t: float, cfg: OracleConfig = OracleConfig()) -> float:
    """Brute-force left fractional integral of ``f`` at ``t``.

    Integrates ``t^alpha / Gamma(alpha + 1) * f(t (1 - y^(1/alpha)))`` over
    ``y`` in ``[0, 1]``; the substitution removes the kernel singularity.
    """
    return oracle_rlfi_result(f, alpha, t, cfg).value


def exact_power(N: int, alpha: float, t: float) -> float:
    """Fractional integral of ``t^N``: ``N! / Gamma(N + alpha + 1) t^(N + alpha)``."""
    t = _check_t(t)
    if N < 0 or int(N) != N:
        raise DomainError(f"N must be a non-negative integer, got {N}")
    if t == 0.0:
        return 0.0
    N = int(N)
    return math.exp(math.lgamma(N + 1.0) - math.lgamma(N + alpha + 1.0)) * t ** (N + alpha)


def exact_exp(k: float, alpha: float, t: float) -> float:
    """Fractional integral of ``exp(k t)`` through 1F1(alpha; alpha + 1; -k t)."""
    t = _check_t(t)
    if k == 0:
        raise DomainError("k must be nonzero")
    if t == 0.0:
        return 0.0
    series = hyp1f1(alpha, alpha + 1.0, -k * t)
    return t**alpha * math.exp(k * t) / math.gamma(alpha + 1.0) * series.value


def exact_cubic_linear(t: float) -> float:
    """Half-order integral of ``2 t^3 + 8 t``."""
    t = _check_t(t)
    return (192.0 * t**3.5 + 1120.0 * t**1.5) / (105.0 * math.sqrt(math.pi))


def _sin_term(k: int, alpha: float, t: float) -> float:
    return ((-1) ** k * math.exp(-math.lgamma(2 * k + 2.0))
            * hyp2f1_terminating(-2 * k - 1, 1.0, alpha + 1.0, t))


def sin_series_terms(alpha: float, t: float, cutoff: float = 1e-18) -> list[float]:
    """Terms of the 2F1 series for the integral of ``sin(1 - t)``, without the prefactor.

    Terms are generated until ``1 / Gamma(2k + 2)`` drops below ``cutoff``.
    """
    t = _check_t(t)
    terms = []
    k = 0
    while True:
        terms.append(_sin_term(k, alpha, t))
        if math.lgamma(2 * k + 2.0) > -math.log(cutoff):
            return terms
        k += 1


def exact_sin_series(alpha: float, t: float, n_terms: int | None = None) -> float:
    """Fractional integral of ``sin(1 - t)`` by its terminating-2F1 series.

    ``n_terms=None`` uses the factorial-tail cutoff of :func:`sin_series_terms`.
    """
    t = _check_t(t)
    if t == 0.0:
        return 0.0
    if n_terms is None:
        terms = sin_series_terms(alpha, t)
    else:
        terms = [_sin_term(k, alpha, t) for k in range(n_terms)]
    return t**alpha / math.gamma(alpha + 1.0) * math.fsum(terms)
