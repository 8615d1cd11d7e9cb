"""Universal coacting Poisson algebras B(P, U) of finite-dimensional Poisson algebras over Q."""
from .algebra import (
    AlgebraElement,
    Check,
    LinearMap,
    PoissonAlgebraData,
    Report,
    ValidationReport,
    check_poisson_hom,
    compose_hom,
    from_rules,
    tensor_poisson,
    validate_poisson,
)
from .errors import (
    BudgetExceeded,
    ConstraintViolation,
    DegreeOverflow,
    DescentFailure,
    DimensionMismatch,
    FileFormatError,
    IndexOutOfRange,
    InvalidAlgebra,
    NotAHomomorphism,
    PoissonError,
)
from .free import (
    FreePoissonElement,
    TensorElement,
    fp_bracket,
    fp_degree,
    fp_mul,
    lie_bracket,
    lyndon_basis,
)
from .quotient import QuotientContext, RelationSet, is_zero_mod, normal_form, quotient_dims, saturate, tensor2_nf
from .universal import (
    CoactionMatrix,
    GeneratorMap,
    UniversalPresentation,
    build_universal,
    check_compat,
    comultiplication,
    counit,
    induced_map_L,
    induced_map_R,
    psi_apply,
    solve_coaction,
    theta,
    theta_inv,
    verify_bialgebra,
    verify_comodule,
    verify_descent,
)

__version__ = "0.1.0"
