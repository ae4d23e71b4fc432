"""Exact computation with finitely additive vector measures on finite algebras.

Conditional expectations along refinement chains, the variation, scalar
semivariation, operator semivariation and Pettis norms, martingale
convergence sweeps, and the dyadic Rademacher counterexample.
"""
from .exceptions import DomainError, ResourceError
from .space import (
    FiniteAlgebra,
    MeasurableSet,
    Partition,
    atom_interval,
    common_refinement,
    dyadic_chain,
    dyadic_partition,
    finest_partition,
    is_refinement,
    make_algebra,
    make_dyadic_algebra,
    partition_from_labels,
    trivial_partition,
)
from .measure import (
    NormTag,
    ScalarMeasure,
    SimpleFunction,
    VectorMeasure,
    apply_T_pi,
    conditional_expectation,
    density_to_measure,
    evaluate,
    functional_slice,
    integrate,
    is_absolutely_continuous,
    lebesgue,
    scalar_tag,
    sharp_lift,
)
from .norms import (
    BoundCertificate,
    dual_norm,
    l1_norm,
    operator_norm_lower_bound,
    operator_semivariation,
    opnorm,
    pettis_norm,
    scalar_semivariation,
    variation,
    vector_norm,
)
from .martingale import (
    ConvergenceReport,
    ConvergenceRow,
    convergence_sweep,
    distance,
    martingale_function,
    pettis_sweep,
)
from .gallery import (
    FunctionalMeasure,
    StepFunctional,
    example7_gap,
    example7_measure,
    nonconvergence_witness,
    odd_dyadic_union,
    rademacher,
    range_diameter,
)
from .specio import MeasureSpec, SpecError, emit_spec, load_spec, parse_spec, spec_from_measure

__version__ = "0.1.0"
