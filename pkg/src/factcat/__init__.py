"""Finite categories, groupoid fibrations, ultimate functors and the
factorization they form, with abstract polynomials on top."""

from .constructions import (
    CommaCone,
    PseudofunctorData,
    arrow_category,
    canonical_r,
    comma,
    core,
    groth,
    opposite,
    product,
    pseudopullback,
    slice_over,
    slice_under,
    validate_pseudofunctor,
)
from .errors import BoundExceeded, GuardExceeded, MalformedInput, NotAGroupoid, WitnessFailure
from .factorize import (
    Factorization,
    ReflectionWitness,
    check_fs0,
    check_fs1,
    comprehensive_factorize,
    reflect_to_gfib,
    ultimate_factorize,
)
from .fib import (
    FibrationReport,
    is_cartesian,
    is_discrete_fibration,
    is_final,
    is_groupoid_fibration,
    is_opfibration_gfib,
    is_ultimate,
    pseudofibre,
)
from .fincat import (
    ONE,
    ZERO,
    Adjunction,
    FinCat,
    FinFunctor,
    NatTransform,
    category,
    compose_functors,
    compute_left_adjoint,
    compute_right_adjoint,
    functor,
    functor_category,
    identity_functor,
    inverting_subcategory,
    is_equivalence,
    nat_iso_exists,
    validate_category,
    validate_functor,
)
from .gpd import (
    NormalizationResult,
    PresentedCategory,
    TriBool,
    groupoid_equiv,
    is_trivial_pi1,
    localize,
    normalize,
    pi1,
)
from .poly import (
    Polynomial,
    compose_polynomials,
    eval_polynomial,
    is_abstract_polynomial_functor,
    right_lift,
)

__version__ = "0.1.0"
