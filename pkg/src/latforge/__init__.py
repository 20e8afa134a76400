"""Exact-arithmetic lattice toolkit.

Constructs lattices in which no shortest basis can contain the shortest
nonzero vector (in any integer-exponent q-norm) and certifies every claimed
property by exhaustive exact enumeration at desk scale.
"""

from .certificates import Certificate, VectorWitness, dumps_canonical
from .construction import (
    PipelineResult,
    PlusLattice,
    TildeLattice,
    build_plus,
    build_tilde,
    choose_epsilon,
    generate_counterexample,
    verify_plus,
)
from .enumeration import (
    BallSpec,
    MinimaProfile,
    ShortVector,
    coset_min_plus,
    enumerate_ball,
    enumerate_tilde_ball,
    second_min_radius_plus,
    shortest_bases_from_set,
    successive_minima,
    successive_minima_plus,
)
from .fixtures import fixture_18dim, fixture_halfint, load_fixture, tilde_from_matrix
from .lattices import (
    Basis,
    CanonicalForm,
    Membership,
    aggregate_length_pow,
    canonicalize,
    lattice_from_dict,
    lattice_to_dict,
    member,
    same_lattice,
)
from .norms import QNormPower, mod_abs, qnorm_mod_pow, qnorm_pow, vec
from .rational import format_rational, parse_rational
from .sigma import (
    FrobeniusDecomposition,
    SigmaVector,
    build_sigma_23,
    frobenius_23,
    random_sigma_search,
    verify_sigma,
)
from .verify import (
    Decomposition,
    StandardnessResult,
    decompose_nonstandard,
    is_standard,
    verify_aggregate,
    verify_main,
    verify_tilde,
)

__version__ = "0.1.0"

__all__ = [
    "BallSpec",
    "Basis",
    "CanonicalForm",
    "Certificate",
    "Decomposition",
    "FrobeniusDecomposition",
    "Membership",
    "MinimaProfile",
    "PipelineResult",
    "PlusLattice",
    "QNormPower",
    "ShortVector",
    "SigmaVector",
    "StandardnessResult",
    "TildeLattice",
    "VectorWitness",
    "aggregate_length_pow",
    "build_plus",
    "build_sigma_23",
    "build_tilde",
    "canonicalize",
    "choose_epsilon",
    "coset_min_plus",
    "decompose_nonstandard",
    "dumps_canonical",
    "enumerate_ball",
    "enumerate_tilde_ball",
    "fixture_18dim",
    "fixture_halfint",
    "format_rational",
    "frobenius_23",
    "generate_counterexample",
    "is_standard",
    "lattice_from_dict",
    "lattice_to_dict",
    "load_fixture",
    "member",
    "mod_abs",
    "parse_rational",
    "qnorm_mod_pow",
    "qnorm_pow",
    "random_sigma_search",
    "same_lattice",
    "second_min_radius_plus",
    "shortest_bases_from_set",
    "successive_minima",
    "successive_minima_plus",
    "tilde_from_matrix",
    "vec",
    "verify_aggregate",
    "verify_main",
    "verify_plus",
    "verify_sigma",
    "verify_tilde",
]
