"""Acceptance benchmark: the reproducible accuracy and timing targets.

Every criterion is a function returning a :class:`CriterionResult`; the
``bench`` CLI command and the acceptance tests both run them from here.
"""

from __future__ import annotations

import io
import math
import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from gegenrl import bounds, reference
from gegenrl.builtins import parse_builtin
from gegenrl.core import apply, build_fsgim, cardinal_matrix, eval_rlfi, sample
from gegenrl.gegenbauer import derivative_factor, leading_coeff, sg_eval_all
from gegenrl.grids import _build_grid, _build_quad, make_grid, sgirv_weights
from gegenrl.storage import dumps_fsgim, load_fsgim

CUBIC_REFERENCE = 2.218878969089873
STRUCTURAL_LAMBDAS = (-0.4, -0.1351, 0.0, 0.5, 1.0, 2.0)


@dataclass
class CriterionResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"[{verdict}] {self.name}: measured={self.measured:.6g} "
                f"threshold={self.threshold:.6g} ({self.detail})")

    def as_dict(self) -> dict:
        return asdict(self)


def _clear_caches() -> None:
    _build_grid.cache_clear()
    _build_quad.cache_clear()


def check_table1() -> CriterionResult:
    """Cubic-plus-linear test: relative error and cold one-shot wall time."""
    f = parse_builtin("cubic8t").f
    best = math.inf
    for _ in range(5):
        _clear_caches()
        start = time.perf_counter()
        value = float(eval_rlfi(f, 3, 0.5, 4, 0.5, 0.5, [0.5])[0])
        best = min(best, time.perf_counter() - start)
    rel = abs(value - CUBIC_REFERENCE) / CUBIC_REFERENCE
    ok = rel <= 5e-15 and best < 0.05
    return CriterionResult("table1", ok, rel, 5e-15,
                           f"value={value!r}, wall={best * 1e3:.2f} ms (< 50 ms)")


def check_power() -> CriterionResult:
    worst, detail = 0.0, []
    for N in (3, 5, 7, 9, 11):
        approx = float(eval_rlfi(lambda t: t**N, N, 0.5, 12, 0.5, 0.5, [0.5])[0])
        err = abs(approx - reference.exact_power(N, 0.5, 0.5))
        worst = max(worst, err)
        detail.append(f"N={N}:{err:.1e}")
    return CriterionResult("power", worst <= 1e-13, worst, 1e-13, ", ".join(detail))


def _exp_error(k: float, n: int) -> tuple[float, float]:
    exact = reference.exact_exp(k, 0.5, 0.5)
    approx = float(eval_rlfi(lambda t: np.exp(k * t), n, 0.5, 12, 0.5, 0.5, [0.5])[0])
    return abs(approx - exact), exact


def decade_span(errors, exact: float) -> float:
    """Orders of magnitude between the first error and the last (floored at one ulp)."""
    floor = np.finfo(float).eps * abs(exact)
    return math.log10(max(errors[0], floor) / max(errors[-1], floor))


def check_exponential() -> CriterionResult:
    worst, min_span, detail = 0.0, math.inf, []
    for k in (-2.0, -1.0, 1.0, 2.0):
        sweep = [_exp_error(k, n) for n in range(4, 14)]
        errors = [e for e, _ in sweep]
        span = decade_span(errors, sweep[0][1])
        worst = max(worst, errors[-1])
        min_span = min(min_span, span)
        detail.append(f"k={k:g}: err13={errors[-1]:.1e}, span={span:.1f}")
    ok = worst <= 1e-13 and min_span >= 8.0
    return CriterionResult("exponential", ok, worst, 1e-13,
                           "; ".join(detail) + " (span >= 8 decades)")


def check_sine() -> CriterionResult:
    points = np.linspace(0.0, 1.0, 1000)
    approx = eval_rlfi(lambda t: np.sin(1.0 - t), 16, 1.0, 16, 0.5, 0.2, points)
    exact = np.array([reference.exact_sin_series(0.2, z) for z in points])
    norm = float(np.linalg.norm(approx - exact))
    return CriterionResult("sine", norm <= 1e-12, norm, 1e-12, "2-norm over 1000 points")


def stationary_newton(lam0: float = -0.1, tol: float = 1e-15) -> float:
    """Root of ``d/dlam ln T1 = -2 ln(1 + 2 lam) - (1 + 4 lam) / (1 + 2 lam)`` by Newton."""
    lam = lam0
    for _ in range(100):
        u = 1.0 + 2.0 * lam
        g = -2.0 * math.log(u) - (1.0 + 4.0 * lam) / u
        dg = (-6.0 - 8.0 * lam) / u**2
        step = g / dg
        lam -= step
        if abs(step) <= tol:
            break
    return lam


def check_lambda_star() -> CriterionResult:
    ls = bounds.lambda_star()
    oracle = stationary_newton()
    diff = abs(ls - oracle)
    four_digits = float(f"{ls:.4g}") == -0.1351
    return CriterionResult("lambda_star", four_digits and diff <= 1e-12, diff, 1e-12,
                           f"lambda_star={ls!r}, newton={oracle!r}, 4 digits -> {ls:.4g}")


def structural_failures() -> list[str]:
    """Run the structural invariants and return a description of each violation."""
    bad = []
    for lam in STRUCTURAL_LAMBDAS:
        beta = math.exp(2 * math.lgamma(lam + 0.5) - math.lgamma(2 * lam + 1))
        for n in range(1, 41):
            g = make_grid(n, lam)
            t = g.nodes
            spacing = np.min(np.diff(t))
            resid = np.abs(sg_eval_all(lam, n + 1, t)[:, n + 1])
            slope = np.abs(derivative_factor(lam, n + 1, 1) * sg_eval_all(lam + 1, n, t)[:, n])
            if np.any(resid > 1e-13 * slope * spacing):
                bad.append(f"node residual n={n} lam={lam}")
            if np.any(np.diff(t) <= 0) or np.max(np.abs(t + t[::-1] - 1)) > 1e-13:
                bad.append(f"node order/symmetry n={n} lam={lam}")
            if np.any(g.christoffel <= 0) or abs(g.christoffel.sum() / beta - 1) > 1e-12:
                bad.append(f"christoffel n={n} lam={lam}")
            card = cardinal_matrix(g, t)
            if np.max(np.abs(card - np.eye(n + 1))) > 1e-12:
                bad.append(f"cardinal delta n={n} lam={lam}")
            rand = np.linspace(0.0, 1.0, 17)
            if np.max(np.abs(cardinal_matrix(g, rand).sum(axis=1) - 1)) > 1e-12:
                bad.append(f"partition of unity n={n} lam={lam}")
            quad = sgirv_weights(n, lam)
            p = np.arange(n + 1)
            mono = quad.nodes[None, :] ** p[:, None] @ quad.weights
            if abs(quad.weights.sum() - 1) > 1e-14 or np.max(np.abs(mono - 1 / (p + 1))) > 1e-13:
                bad.append(f"sgirv exactness n_q={n} lam_q={lam}")
    points = np.linspace(0.0, 1.0, 11)
    for n, lam, n_q, lam_q, alpha in [(3, 0.5, 4, 0.5, 0.5), (10, 0.0, 12, 0.0, 0.3),
                                     (20, -0.4, 24, 1.0, 0.8), (32, 2.0, 36, -0.1351, 0.1)]:
        F = build_fsgim(make_grid(n, lam), sgirv_weights(n_q, lam_q), alpha, points)
        target = points**alpha / math.gamma(alpha + 1)
        rows = F.scaled.sum(axis=1)
        if np.any(rows[0] != 0) or np.max(np.abs(rows[1:] / target[1:] - 1)) > 1e-13:
            bad.append(f"row sum n={n} lam={lam} alpha={alpha}")
        if load_fsgim(io.BytesIO(dumps_fsgim(F))) != F:
            bad.append(f"serialization round trip n={n}")
    return bad


def check_structural() -> CriterionResult:
    start = time.perf_counter()
    bad = structural_failures()
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60.0
    detail = f"{len(bad)} violations" + (f": {bad[:5]}" if bad else "")
    return CriterionResult("structural", ok, elapsed, 60.0, detail + " (runtime in s)")


def check_oracle() -> CriterionResult:
    points = np.linspace(0.0, 1.0, 50)
    funcs: dict[str, Callable] = {
        "exp(2t)": lambda t: np.exp(2.0 * t),
        "sin(1-t)": lambda t: np.sin(1.0 - t),
        "1/(1+t)": lambda t: 1.0 / (1.0 + t),
    }
    worst, detail = 0.0, []
    for label, f in funcs.items():
        approx = eval_rlfi(f, 20, 0.5, 24, 0.5, 0.5, points)
        truth = np.array([reference.oracle_rlfi(f, 0.5, z) for z in points])
        dev = float(np.max(np.abs(approx - truth)))
        worst = max(worst, dev)
        detail.append(f"{label}:{dev:.1e}")
    return CriterionResult("oracle", worst <= 1e-10, worst, 1e-10, ", ".join(detail))


def check_precompute(n_vectors: int = 100) -> CriterionResult:
    n, n_q, lam, lam_q, alpha = 32, 36, 0.5, 0.5, 0.5
    points = np.linspace(0.0, 1.0, 1001)
    grid, quad = make_grid(n, lam), sgirv_weights(n_q, lam_q)
    blob = dumps_fsgim(build_fsgim(grid, quad, alpha, points))
    rng = np.random.default_rng(7)
    freqs = rng.uniform(-3.0, 3.0, n_vectors)
    vectors = [sample(lambda t, c=c: np.exp(c * t), grid) for c in freqs]

    start = time.perf_counter()
    F = load_fsgim(io.BytesIO(blob))
    fast = [apply(F, v) for v in vectors]
    t_apply = time.perf_counter() - start

    start = time.perf_counter()
    slow = [apply(build_fsgim(make_grid(n, lam), sgirv_weights(n_q, lam_q), alpha, points), v)
            for v in vectors]
    t_rebuild = time.perf_counter() - start

    same = all(np.array_equal(a, b) for a, b in zip(fast, slow))
    ratio = t_rebuild / t_apply
    return CriterionResult("precompute", ratio >= 10.0 and same, ratio, 10.0,
                           f"rebuild {t_rebuild * 1e3:.1f} ms vs load+apply "
                           f"{t_apply * 1e3:.2f} ms, identical={same}")


def leading_coeff_ratio(n_q: int, lam_q: float) -> float:
    """``(n_q+1)! K_{n_q+1} / [Theta n_q^(3/2 - lam_q) (2 n_q / e)^n_q]`` in log space."""
    log_ratio = (math.lgamma(n_q + 2.0) + leading_coeff(lam_q, n_q + 1, log=True)
                 - math.log(bounds.theta_const(lam_q)) - (1.5 - lam_q) * math.log(n_q)
                 - n_q * (math.log(2.0 * n_q) - 1.0))
    return math.exp(log_ratio)


def check_leading_coeff() -> CriterionResult:
    ratios = {lq: leading_coeff_ratio(200, lq) for lq in (0.5, 1.0)}
    dev = max(abs(r - 1.0) for r in ratios.values())
    ok = all(0.98 <= r <= 1.02 for r in ratios.values())
    return CriterionResult("leading_coeff", ok, dev, 0.02,
                           ", ".join(f"lambda_q={k:g}: {v:.6f}" for k, v in ratios.items()))


CRITERIA: dict[str, Callable[[], CriterionResult]] = {
    "table1": check_table1,
    "power": check_power,
    "exponential": check_exponential,
    "sine": check_sine,
    "lambda_star": check_lambda_star,
    "structural": check_structural,
    "oracle": check_oracle,
    "precompute": check_precompute,
    "leading_coeff": check_leading_coeff,
}


def run_criteria(names=None) -> list[CriterionResult]:
    """Run the named criteria (all by default), timing each one."""
    results = []
    for name in names or CRITERIA:
        start = time.perf_counter()
        result = CRITERIA[name]()
        result.seconds = time.perf_counter() - start
        results.append(result)
    return results
