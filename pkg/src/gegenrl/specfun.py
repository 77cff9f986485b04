"""Scalar special functions used throughout the package.

Gamma and log-gamma are thin guards around :mod:`math`; the Lambert W
principal branch and the hypergeometric series are implemented here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from gegenrl.exceptions import ConvergenceError, DomainError

SERIES_TERM_CAP = 10_000
SERIES_TOL = 1e-16

_INV_E = math.exp(-1.0)


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of a truncated power-series evaluation."""

    value: float
    terms_used: int
    converged: bool


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma(x: float) -> float:
    """Gamma function on the real line.

    Raises
    ------
    DomainError
        At the poles ``x = 0, -1, -2, ...``.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"gamma has a pole at x={x}")
    return math.gamma(x)


def lgamma(x: float) -> float:
    """Natural log of ``|gamma(x)|``."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"lgamma has a pole at x={x}")
    return math.lgamma(x)


def gamma_sign(x: float) -> float:
    """Sign of ``gamma(x)`` (+1.0 or -1.0)."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"gamma has a pole at x={x}")
    if x > 0:
        return 1.0
    return -1.0 if math.floor(x) % 2 else 1.0


def lambert_w0(x: float) -> float:
    """Principal branch of the Lambert W function, ``w * exp(w) = x``.

    Halley iteration from a branch-point series, ``log1p`` or the
    asymptotic ``log x - log log x`` seed depending on the region.
    """
    x = float(x)
    if x < -_INV_E:
        # allow a rounding-level undershoot of the branch point
        if x < -_INV_E * (1.0 + 4 * 2.0**-52):
            raise DomainError(f"lambert_w0 requires x >= -1/e, got {x}")
        return -1.0
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf

    if x < -0.32:
        p = math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    elif x <= 3.0:
        w = math.log1p(x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1

    for _ in range(64):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        dw = f / denom
        w -= dw
        if abs(dw) <= 4e-16 * max(1.0, abs(w)):
            break
    return w


def hyp1f1(a: float, c: float, z: float, tol: float = SERIES_TOL,
           max_terms: int = SERIES_TERM_CAP) -> SeriesResult:
    """Confluent hypergeometric function 1F1(a; c; z) by its power series.

    Negative arguments go through Kummer's transformation
    ``1F1(a; c; z) = exp(z) 1F1(c - a; c; -z)`` so the summed series never
    alternates in ``z``. Terms are accumulated with :func:`math.fsum`.

    Raises
    ------
    DomainError
        If ``c`` is a non-positive integer.
    ConvergenceError
        If the term magnitude has not dropped below ``tol * |sum|`` after
        ``max_terms`` terms.
    """
    a, c, z = float(a), float(c), float(z)
    if _is_nonpositive_integer(c):
        raise DomainError(f"hyp1f1 undefined for non-positive integer c={c}")
    if z == 0.0:
        return SeriesResult(1.0, 1, True)

    scale = 1.0
    if z < 0:
        a, z, scale = c - a, -z, math.exp(z)

    terms = [1.0]
    term = 1.0
    for k in range(max_terms - 1):
        term *= (a + k) / (c + k) * z / (k + 1)
        terms.append(term)
        if term == 0.0:
            return SeriesResult(scale * math.fsum(terms), len(terms), True)
        if k + 1 >= z and abs(term) <= tol * abs(math.fsum(terms)):
            return SeriesResult(scale * math.fsum(terms), len(terms), True)
    raise ConvergenceError(
        f"hyp1f1({a}, {c}, {z}) did not converge in {max_terms} terms",
        estimate=scale * math.fsum(terms), iterations=len(terms))


def hyp2f1_terminating(a: int, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric 2F1(a, b; c; z) for a negative integer ``a``.

    The series stops after ``|a| + 1`` terms, so this is an exact finite sum.
    """
    if int(a) != a or a >= 0:
        raise DomainError(f"hyp2f1_terminating needs a negative integer a, got {a}")
    a = int(a)
    b, c, z = float(b), float(c), float(z)
    terms = [1.0]
    term = 1.0
    for k in range(-a):
        if c + k == 0.0:
            raise DomainError(f"(c)_k vanishes inside the sum: c={c}, k={k}")
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        terms.append(term)
    return math.fsum(terms)
