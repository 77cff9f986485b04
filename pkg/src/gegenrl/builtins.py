"""Named test functions with known fractional integrals.

Spec strings: ``power:N`` (``t^N``), ``exp:k`` (``exp(k t)``, ``k != 0``),
``cubic8t`` (``2 t^3 + 8 t``) and ``sin1mt`` (``sin(1 - t)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from gegenrl import reference
from gegenrl.exceptions import DomainError


@dataclass(frozen=True)
class Builtin:
    name: str
    f: Callable[[np.ndarray], np.ndarray]
    exact: Callable[[float, float], float]

    def exact_many(self, alpha: float, points) -> np.ndarray:
        return np.array([self.exact(alpha, float(z)) for z in np.atleast_1d(points)])


def _cubic_exact(alpha: float, t: float) -> float:
    if alpha == 0.5:
        return reference.exact_cubic_linear(t)
    return 2.0 * reference.exact_power(3, alpha, t) + 8.0 * reference.exact_power(1, alpha, t)


def parse_builtin(spec: str) -> Builtin:
    """Turn a spec string such as ``"exp:-2"`` into a :class:`Builtin`."""
    name, _, arg = spec.strip().partition(":")
    if name == "power":
        try:
            N = int(arg)
        except ValueError:
            raise DomainError(f"power needs an integer exponent, got {arg!r}") from None
        if N < 0:
            raise DomainError(f"power exponent must be >= 0, got {N}")
        return Builtin(spec, lambda t: np.asarray(t, dtype=float) ** N,
                       lambda a, t: reference.exact_power(N, a, t))
    if name == "exp":
        try:
            k = float(arg)
        except ValueError:
            raise DomainError(f"exp needs a real rate, got {arg!r}") from None
        if k == 0.0:
            raise DomainError("exp rate k must be nonzero")
        return Builtin(spec, lambda t: np.exp(k * np.asarray(t, dtype=float)),
                       lambda a, t: reference.exact_exp(k, a, t))
    if arg:
        raise DomainError(f"{name} takes no argument")
    if name == "cubic8t":
        return Builtin(spec, lambda t: 2.0 * np.asarray(t, dtype=float) ** 3 + 8.0 * np.asarray(t),
                       _cubic_exact)
    if name == "sin1mt":
        return Builtin(spec, lambda t: np.sin(1.0 - np.asarray(t, dtype=float)),
                       reference.exact_sin_series)
    raise DomainError(f"unknown function {spec!r}; expected power:N, exp:k, cubic8t or sin1mt")
