"""Simplicial gauge theory on periodic Kuhn meshes."""

from ._core import (
    GaugeField,
    GaugeTransform,
    Mass,
    Mesh,
    SgtError,
    action,
    apply_gauge,
    bch,
    bracket,
    continuum_action,
    dexp,
    exp,
    fit_power_law,
    generator,
    log,
    random_field,
    random_gauge,
    run_convergence,
    run_gauge_invariance,
    sample_case,
)

__all__ = [
    "GaugeField",
    "GaugeTransform",
    "Mass",
    "Mesh",
    "SgtError",
    "action",
    "apply_gauge",
    "bch",
    "bracket",
    "continuum_action",
    "dexp",
    "exp",
    "fit_power_law",
    "generator",
    "log",
    "random_field",
    "random_gauge",
    "run_convergence",
    "run_gauge_invariance",
    "sample_case",
]
