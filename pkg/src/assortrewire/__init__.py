"""Rewire weighted directed networks towards prescribed assortativity.

A target matrix with the same strengths, edge count and requested
coefficients is found by linear programming, then reached from the initial
network by a sequence of strength-preserving four-cell weight transfers.
"""
from .assortativity import (
    PAIRS,
    AssortativityQuad,
    UndefinedCoefficientError,
    assortativity,
    assortativity_all,
    assortativity_delta,
)
from .generators import (
    ConstantWeights,
    ErConfig,
    GammaWeights,
    GeneratorError,
    PaConfig,
    erdos_renyi,
    preferential_attachment,
)
from .graph import (
    EdgeListError,
    GraphError,
    NegativeWeightError,
    RewiringStep,
    StrengthProfile,
    WeightedDigraph,
    apply_step,
    from_edge_list,
    nnz,
    read_edge_list,
    strength_profile,
    write_edge_list,
)
from .rewire import (
    CorruptRecordError,
    DifferenceMatrix,
    MarginMismatchError,
    RewiringRecord,
    RewiringStallError,
    replay,
    sweep,
)
from .simplex import LinearProgram, LPResult, SolverStallError, solve_lp
from .target import (
    FIXED,
    FREE,
    L1_TO_W,
    ZERO,
    ConfigurationError,
    Objective,
    TargetMatrix,
    TargetProblem,
    TargetVerificationError,
    assortativity_bounds,
    bound_max,
    bound_min,
    check_target,
    solve_target,
)

__version__ = "0.1.0"
