"""Geometric programming under two-fold uncertainty.

Public surface: the single-fold distribution machinery, two-fold
variables with their reduction criteria, the posynomial GP dual solver,
and the chance-constrained pipeline tying them together.
"""

from .chance import (
    ChanceConfig,
    FailedRow,
    ReducedGPProblem,
    SweepRow,
    UncertainGPProblem,
    UncertainTerm,
    deterministic_form,
    reduce_problem,
    solve_chance,
    sweep,
)
from .distributions import (
    AffineSegment,
    ConstantSegment,
    CriticalValueQuery,
    LinearDistribution,
    PiecewiseDistribution,
    QuadraticSegment,
    RegularityReport,
    TrapezoidalDistribution,
    TriangularDistribution,
    as_piecewise,
    cdf,
    check_regularity,
    critical_value,
    expected_value,
    inverse_cdf,
)
from .errors import (
    AlphaOutOfRange,
    DegreeOfDifficultyNegative,
    InfeasibleDual,
    NonConvergence,
    ProblemFormatError,
    QuadratureNonConvergence,
    RankDeficient,
    YOutOfRange,
)
from .gp import (
    DeterministicGP,
    DualProblem,
    DualSolution,
    GPDiagnostics,
    Posynomial,
    build_dual,
    degree_of_difficulty,
    recover_primal,
    solve_dual,
    solve_gp,
    verify_solution,
)
from .twofold import (
    ReductionCriterion,
    TwoFoldSurfacePoint,
    TwoFoldVariable,
    curve_samples,
    reduce_twofold,
    reduced_inverse,
    surface_at,
    twofold_cdf,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSegment",
    "AlphaOutOfRange",
    "ChanceConfig",
    "ConstantSegment",
    "CriticalValueQuery",
    "DegreeOfDifficultyNegative",
    "DeterministicGP",
    "DualProblem",
    "DualSolution",
    "FailedRow",
    "GPDiagnostics",
    "InfeasibleDual",
    "LinearDistribution",
    "NonConvergence",
    "PiecewiseDistribution",
    "Posynomial",
    "ProblemFormatError",
    "QuadratureNonConvergence",
    "QuadraticSegment",
    "RankDeficient",
    "ReducedGPProblem",
    "ReductionCriterion",
    "RegularityReport",
    "SweepRow",
    "TrapezoidalDistribution",
    "TriangularDistribution",
    "TwoFoldSurfacePoint",
    "TwoFoldVariable",
    "UncertainGPProblem",
    "UncertainTerm",
    "YOutOfRange",
    "as_piecewise",
    "build_dual",
    "cdf",
    "check_regularity",
    "critical_value",
    "curve_samples",
    "degree_of_difficulty",
    "deterministic_form",
    "expected_value",
    "inverse_cdf",
    "recover_primal",
    "reduce_problem",
    "reduce_twofold",
    "reduced_inverse",
    "solve_chance",
    "solve_dual",
    "solve_gp",
    "surface_at",
    "sweep",
    "twofold_cdf",
    "verify_solution",
]
