"""Magnetic Harper operators on Fuchsian groups and their Hall conductance."""

from ._orbihall import (
    CayleyBall,
    HarperSystem,
    NumericalError,
    Realization,
    Signature,
    area_cocycle,
    butterfly,
    classification_equivalent,
    cone_residues,
    covering_genus,
    euclidean_lattice,
    flux_theta,
    gaps,
    harper_spectrum,
    k_theory_ranks,
    minimal_trace,
    multiplier,
    orbifold_euler_characteristic,
    phi,
    psi_sum,
    realize,
    smallest_smooth_cover_order,
    solve_coboundary_defect,
)

__all__ = [
    "CayleyBall",
    "HarperSystem",
    "NumericalError",
    "Realization",
    "Signature",
    "area_cocycle",
    "butterfly",
    "classification_equivalent",
    "cone_residues",
    "covering_genus",
    "euclidean_lattice",
    "flux_theta",
    "gaps",
    "harper_spectrum",
    "k_theory_ranks",
    "minimal_trace",
    "multiplier",
    "orbifold_euler_characteristic",
    "phi",
    "psi_sum",
    "realize",
    "smallest_smooth_cover_order",
    "solve_coboundary_defect",
]
