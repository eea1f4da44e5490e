"""Quantum field in a one-dimensional cavity with a moving mirror.

Phase functions of the Moore equation, vacuum energy, Bogolubov
coefficients and the SL(2,R) symmetry of minimal-energy solutions.
"""
from .errors import (
    CavityError,
    ConfigError,
    DomainError,
    MonotonicityError,
    NumericalError,
    ParameterError,
    PreconditionError,
    SolverError,
)
from .trajectory import (
    TrajectoryKind,
    WallTrajectory,
    custom,
    eval_trajectory,
    lawwu,
    sinusoidal,
    static,
    validate_trajectory,
)
from . import trajectory
from .moebius import (
    MoebiusElement,
    PiecewiseMoebius,
    CallableSigma,
    compose,
    inverse,
    minimal_phase,
    minimal_T_squared,
    random_element,
    conformal_compose,
    infinitesimal_flow,
    exact_flow,
)
from .phase import (
    PhaseFunction,
    ResonantAnsatz,
    solve_phase,
    build_sinusoidal_asymptotic,
    build_lawwu,
    lawwu_exact,
    assemble_resonant,
    invert_phase,
    eval_mode,
    moore_residual,
    max_moore_residual,
)

from .observables import (
    EnergyProfile,
    EnergyReport,
    casimir_energy,
    schwarzian,
    profile,
    energy_profile,
    total_energy,
    subcasimir_bound_check,
    energy_via_T,
    t_constraint,
    resonant_energy,
    resonant_profile,
    resonance_energy_law,
    lawwu_energy_law,
)
from .particles import (
    SpectrumResult,
    bogolubov_direct,
    alpha_direct,
    bogolubov_resonant,
    spectrum,
    photon_numbers,
    sum_rule_check,
)

__version__ = "0.1.0"
