"""Spectra, information complexity and EC-tractability for analytic Korobov kernels."""

from ._core import (
    Caps,
    DomainError,
    ResourceError,
    UnsupportedQuery,
    WeightSpec,
    avg_error,
    chain_check,
    classify,
    count_lattice,
    eigenvalues,
    grid_count,
    info_complexity_avg,
    info_complexity_worst,
    initial_avg_error,
    load_spec,
    mc_avg_error,
    run_cli,
    trace,
    worst_error,
)

__all__ = [
    "Caps",
    "DomainError",
    "ResourceError",
    "UnsupportedQuery",
    "WeightSpec",
    "avg_error",
    "chain_check",
    "classify",
    "count_lattice",
    "eigenvalues",
    "grid_count",
    "info_complexity_avg",
    "info_complexity_worst",
    "initial_avg_error",
    "load_spec",
    "mc_avg_error",
    "run_cli",
    "trace",
    "worst_error",
]
