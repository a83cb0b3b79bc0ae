"""Exact calculus of arbitrary functions between finite groups."""

from .errors import (
    AbelianPreconditionError,
    CertificationError,
    ContainmentError,
    CoprimalityError,
    GroupFuncError,
    InvariantViolationError,
    NormalityError,
    NotCotwistedError,
    PreconditionError,
    RangeError,
    ShapeError,
    SizeLimitError,
    SolubilityError,
    SpecParseError,
    TableValidationError,
)
from .group_core import (
    CosetSystem,
    Group,
    QuotientGroup,
    Subgroup,
    all_subgroups,
    derived_series,
    derived_subgroup,
    from_cayley_table,
    from_permutations,
    is_normal,
    is_soluble,
    left_cosets,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_symmetric,
    mod_inverse,
    normal_subgroups,
    normalizer,
    quotient,
    right_cosets,
    subgroup_as_group,
    subgroup_closure,
    subgroup_from_members,
    trivial_subgroup,
    whole_subgroup,
)
from .function_space import (
    FunctionOrbit,
    GroupFunction,
    Homomorphism,
    act,
    as_homomorphism,
    conjugate,
    constant_identity,
    coset_section,
    count_identity_preserving,
    enumerate_identity_preserving,
    image_subgroup,
    inversion_function,
    is_homomorphism,
    orbit,
    orbit_census,
    pointwise_inverse,
    pointwise_product,
    stabilizer,
)

__version__ = "0.1.0"
