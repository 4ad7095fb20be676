"""Whispering-gallery modes of dielectric microspheres and their cavity-QED figures of merit."""
from .cqed import CqedPoint, beta, coupling_g, cqed_point
from .errors import (
    ConvergenceError,
    NoCrossingError,
    NoResonanceError,
    RadiativeQWarning,
    WgmError,
)
from .material import AtomSpec, MaterialModel, cesium_d2, fused_silica, silica_index
from .modes import (
    ModeIndex,
    Polarization,
    Resonance,
    complex_pole_q,
    eval_mode,
    exterior_surface_amplitude,
    solve_resonance,
)
from .quality import QBudget, q_budget, q_bulk, q_rad, q_surface_scatter, q_water
from .sweep import (
    OptimumReport,
    Scenario,
    SweepRow,
    evaluate_scenario,
    find_crossing,
    find_optimum,
    run_sweep,
)
from .volume import ModeVolume, dimensionless_curve, mode_volume

__version__ = "0.1.0"

__all__ = [
    "AtomSpec", "ConvergenceError", "CqedPoint", "MaterialModel", "ModeIndex", "ModeVolume",
    "NoCrossingError", "NoResonanceError", "OptimumReport", "Polarization", "QBudget",
    "RadiativeQWarning", "Resonance", "Scenario", "SweepRow", "WgmError", "beta",
    "cesium_d2", "complex_pole_q", "coupling_g", "cqed_point", "dimensionless_curve",
    "eval_mode", "evaluate_scenario", "exterior_surface_amplitude", "find_crossing",
    "find_optimum", "fused_silica", "mode_volume", "q_budget", "q_bulk", "q_rad",
    "q_surface_scatter", "q_water", "run_sweep", "silica_index", "solve_resonance",
]
