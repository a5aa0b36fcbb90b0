"""Exact free-product joinings of group C*-dynamical systems."""

from .errors import (
    AlphabetMismatchError,
    ConfigError,
    ContextError,
    FreeJoinError,
    IdentityWordError,
    IntertwiningError,
    ThresholdError,
    WordSyntaxError,
)
from .freegroup import (
    IDENTITY,
    INFINITE,
    FiniteCycles,
    Fixed,
    Letter,
    Shift,
    Symbol,
    SymbolBijection,
    Word,
    apply_power,
    invert,
    is_fixed,
    multiply,
    orbit_period,
    parse_word,
    reduce,
)
from .freeproduct import (
    FreeProductContext,
    GroupSystem,
    Monomial,
    embed,
    fixed_subgroup_member,
    flatten,
    free_product_state,
    identity_system,
    product_automorphism,
    shift_system,
)
from .groupalg import (
    AlgebraElement,
    FinVector,
    alg_add,
    alg_adjoint,
    alg_automorphism,
    alg_mul,
    alg_scale,
    inner,
    left_regular_apply,
    norm_sq,
    parse_element,
    unitary_T_apply,
    vacuum_state,
)
from .joinings import (
    DiagonalJoining,
    FactorMap,
    Joining,
    TrivialJoining,
    VectorStateJoining,
    check_tensorial_splitting,
    diagonal_joining,
    trivial_joining,
    vector_state_joining,
    verify_joining_axioms,
)
from .reports import Report
from .scalars import ComplexRational, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatchError",
    "ConfigError",
    "ContextError",
    "FreeJoinError",
    "IdentityWordError",
    "IntertwiningError",
    "ThresholdError",
    "WordSyntaxError",
    "IDENTITY",
    "INFINITE",
    "FiniteCycles",
    "Fixed",
    "Letter",
    "Shift",
    "Symbol",
    "SymbolBijection",
    "Word",
    "apply_power",
    "invert",
    "is_fixed",
    "multiply",
    "orbit_period",
    "parse_word",
    "reduce",
    "FreeProductContext",
    "GroupSystem",
    "Monomial",
    "embed",
    "fixed_subgroup_member",
    "flatten",
    "free_product_state",
    "identity_system",
    "product_automorphism",
    "shift_system",
    "AlgebraElement",
    "FinVector",
    "alg_add",
    "alg_adjoint",
    "alg_automorphism",
    "alg_mul",
    "alg_scale",
    "inner",
    "left_regular_apply",
    "norm_sq",
    "parse_element",
    "unitary_T_apply",
    "vacuum_state",
    "DiagonalJoining",
    "FactorMap",
    "Joining",
    "TrivialJoining",
    "VectorStateJoining",
    "check_tensorial_splitting",
    "diagonal_joining",
    "trivial_joining",
    "vector_state_joining",
    "verify_joining_axioms",
    "Report",
    "ComplexRational",
    "parse_scalar",
]
