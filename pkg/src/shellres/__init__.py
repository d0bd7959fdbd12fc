"""Scattering off a spherical shell barrier on the complex wave-number plane.

Core objects: the regular solution and its matching (Jost) coefficients,
the S-matrix, resonance poles and their Gamow states, and resonance
expansions of continuum wave packets with contour-deformed backgrounds.
"""
from .errors import (
    AlphaNegative,
    ArityTooSmall,
    BoundaryZero,
    ConfigError,
    ContourTooClose,
    DegenerateMatch,
    J3Vanishes,
    NonConvergence,
    NonMonotone,
    NotAPole,
    OrderedRadii,
    PairingViolation,
    PoleAtInput,
    ShellresError,
)
from .model import ComplexEnergy, PotentialSpec, Sheet, WaveNumber, energy_from_k, inner_momentum, make_potential
from .jost import (
    EigenfunctionSample,
    JostCoeffs,
    chi_grid,
    chi_minus,
    chi_plus,
    eigenfunction_sample,
    left_eigenfunction,
    match_coeffs,
    match_with_derivative,
    regular_solution,
    regular_solution_with_slope,
    s_matrix,
)
from .green import GreenSample, g0, g_total, green_sample, jost_solution, jost_solution_with_slope, ls_residual, wronskian
from .poles import (
    AntiResonancePole,
    ResonancePole,
    SearchRegion,
    count_zeros,
    find_resonances,
    pair_antiresonance,
    residue_s,
)
from .gamow import GamowState, antiresonance_state, evaluate_gamow, gamow_state, schrodinger_residual
from .expansions import (
    Contour,
    ContourSegment,
    ExpansionReport,
    TestFunction,
    alpha_extrapolate,
    contour_nodes,
    k_quadrature,
    project,
    reconstruct_continuum,
    resonance_expansion,
)
from .checks import CheckPart, CheckResult, run_criteria

__version__ = "0.1.0"

__all__ = [
    "AlphaNegative", "AntiResonancePole", "ArityTooSmall", "BoundaryZero",
    "CheckPart", "CheckResult", "ComplexEnergy", "ConfigError", "Contour",
    "ContourSegment", "ContourTooClose", "DegenerateMatch",
    "EigenfunctionSample", "ExpansionReport", "GamowState", "GreenSample",
    "J3Vanishes", "JostCoeffs", "NonConvergence", "NonMonotone", "NotAPole",
    "OrderedRadii", "PairingViolation", "PoleAtInput", "PotentialSpec",
    "ResonancePole", "SearchRegion", "Sheet", "ShellresError", "TestFunction",
    "WaveNumber", "alpha_extrapolate", "antiresonance_state", "chi_grid",
    "chi_minus", "chi_plus", "contour_nodes", "count_zeros",
    "eigenfunction_sample", "energy_from_k", "evaluate_gamow",
    "find_resonances", "g0", "g_total", "gamow_state", "green_sample",
    "inner_momentum", "jost_solution", "jost_solution_with_slope",
    "k_quadrature", "left_eigenfunction", "ls_residual", "make_potential",
    "match_coeffs", "match_with_derivative", "pair_antiresonance", "project",
    "reconstruct_continuum", "regular_solution", "regular_solution_with_slope",
    "residue_s", "resonance_expansion", "run_criteria", "s_matrix",
    "schrodinger_residual", "wronskian",
]
