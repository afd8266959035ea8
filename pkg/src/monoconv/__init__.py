"""monoconv: numerics for monotone convolution.

Measures on the real line (atomic / grid / analytic families), their
Cauchy and reciprocal Cauchy transforms, exact atomic monotone convolution,
moment recursions, convolution semigroup flows with atom and support-edge
tracking, strictly stable families, the monotone Bercovici-Pata bijection,
and boolean/free comparison operations.
"""

from . import boolean_free, bpmap, moments, semigroup, stable, transforms
from .atomic import (
    InterlacingReport,
    atomic_H_partial_fractions,
    interlacing_check,
    monotone_convolve_atomic,
    point_convolve,
)
from .errors import (
    AtomCollision,
    BranchCutHit,
    CaseMismatch,
    DivergentMoment,
    GridTooCoarse,
    InfiniteVariance,
    MonoconvError,
    PoleAt,
    StepUnderflow,
    UnboundedBelowTau,
    UnnormalizedB,
    ZeroG,
    ZeroVariance,
)
from .measures import (
    Arcsine,
    AtomicMeasure,
    DeformedArcsine,
    Dirac,
    GridMeasure,
    MonotonePoisson,
    StableLaw,
    conv_support_bounds,
    dilate,
    interval_mass,
    measure_from_json,
    measure_to_json,
    reflect,
    support_bounds,
    total_mass,
)
from .moments import (
    FieldCoefficients,
    MomentSequence,
    convolve_moments,
    even_moment_tail_check,
    field_coefficients,
    moment_ode_rhs,
    moments_of,
    semigroup_consistency,
    semigroup_moment,
    symmetry_diagnostic,
)
from .semigroup import (
    AtomTrack,
    CaseLabel,
    EdgeTrack,
    FlowResult,
    VectorField,
    atom_track,
    bounded_below_check,
    classify_field,
    field_eval,
    flow,
    markov_kernel,
    monotone_poisson_field,
    reflect_field,
    subordinator_check,
    support_edge,
)
from .stable import (
    StableParams,
    SupportCase,
    stable_H,
    stable_density,
    stable_field,
    stable_support_case,
    stable_valid,
)
from .transforms import (
    FiniteVarianceRep,
    NevanlinnaRep,
    TransformEvaluator,
    atom_weight_at,
    cauchy_G,
    collision_search,
    divisibility_bound,
    finite_variance_rep,
    positivity_check,
    reciprocal_H,
    stieltjes_invert,
)

__version__ = "0.1.0"
