"""Large-order weak-field perturbation theory for the 2D hydrogen-like atom
in a uniform magnetic field, by hypervirial recurrences in exact arithmetic."""

__version__ = "0.1.0"

from hpmkit.exact import PolyNL, format_poly, format_rational, parse_poly, parse_rational  # noqa: E402
from hpmkit.hpm import (  # noqa: E402
    PerturbationSeries,
    ProblemSpec,
    QTable,
    StateSpec,
    compute_series,
    compute_series_symbolic,
    epsilon_zero,
    epsilon_zero_symbolic,
    hypervirial_residual,
)

__all__ = [
    "PolyNL",
    "PerturbationSeries",
    "ProblemSpec",
    "QTable",
    "StateSpec",
    "compute_series",
    "compute_series_symbolic",
    "epsilon_zero",
    "epsilon_zero_symbolic",
    "format_poly",
    "format_rational",
    "hypervirial_residual",
    "parse_poly",
    "parse_rational",
]
