"""Spectral approximation of the left Riemann-Liouville fractional integral
with shifted Gegenbauer interpolation and precomputed integration matrices."""

__version__ = "0.1.0"

from gegenrl.core import (  # noqa: E402
    Fsgim,
    SampleVector,
    apply,
    build_fsgim,
    cardinal_eval,
    eval_rlfi,
    interpolate,
    modal_integral,
    sample,
)
from gegenrl.grids import Grid, QuadRule, make_grid, sgirv_weights  # noqa: E402
from gegenrl.storage import load_fsgim, save_fsgim  # noqa: E402

__all__ = [
    "Fsgim",
    "Grid",
    "QuadRule",
    "SampleVector",
    "apply",
    "build_fsgim",
    "cardinal_eval",
    "eval_rlfi",
    "interpolate",
    "load_fsgim",
    "make_grid",
    "modal_integral",
    "sample",
    "save_fsgim",
    "sgirv_weights",
]
