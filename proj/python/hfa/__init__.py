"""Instantons and hyperbolic vortices built from harmonic super-potentials.

Thin wrapper over the compiled core: potential factories, residual checks,
curvature densities, and the Chern-number integrals.
"""

from hfa._core import (
    HfaError,
    SuperPotential,
    chern1,
    chern2,
    chern_reduction_check,
    curvature_densities,
    disc_family,
    fhp1,
    fhp2,
    halfplane_sym,
    harmonic_residual,
    harmonic_residual_hyp,
    higgs_zeros,
    holonomy,
    holonomy_parameter,
    potential_from_json,
    reduced_action,
    thooft,
    vortex_field,
    vortex_residuals,
)

__all__ = [
    "HfaError",
    "SuperPotential",
    "chern1",
    "chern2",
    "chern_reduction_check",
    "curvature_densities",
    "disc_family",
    "fhp1",
    "fhp2",
    "halfplane_sym",
    "harmonic_residual",
    "harmonic_residual_hyp",
    "higgs_zeros",
    "holonomy",
    "holonomy_parameter",
    "potential_from_json",
    "reduced_action",
    "thooft",
    "vortex_field",
    "vortex_residuals",
]
