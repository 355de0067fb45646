"""Quantum straightening laws for quantum matrices, grassmannians and their quotients."""
from qasl.laurent import LaurentPoly, RationalFunc, specialize
from qasl.qmatrix import (
    AlgebraElement,
    IndexPair,
    laplace_expand,
    maximal_minor,
    multiply,
    normal_form,
    quantum_minor,
)
from qasl.poset import (
    Poset,
    PiIdeal,
    build_delta_poset,
    build_pi_poset,
    delta_embedding,
    is_distributive_lattice,
    multichain_genfunc,
    pi_ideal,
    rank,
)
from qasl.straighten import (
    AlgebraConfig,
    commutation_relation,
    coordinates,
    ideal_membership,
    normalizing_sequence_check,
    realize,
    standard_monomials,
    straightening_relation,
    verify_asl,
    verify_dehom_plucker,
)
from qasl.hilbert import HilbertSeries, gk_dimension, gorenstein_test, hilbert_series

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "RationalFunc", "specialize",
    "AlgebraElement", "IndexPair", "laplace_expand", "maximal_minor", "multiply", "normal_form",
    "quantum_minor",
    "Poset", "PiIdeal", "build_delta_poset", "build_pi_poset", "delta_embedding",
    "is_distributive_lattice", "multichain_genfunc", "pi_ideal", "rank",
    "AlgebraConfig", "commutation_relation", "coordinates", "ideal_membership",
    "normalizing_sequence_check", "realize", "standard_monomials", "straightening_relation",
    "verify_asl", "verify_dehom_plucker",
    "HilbertSeries", "gk_dimension", "gorenstein_test", "hilbert_series",
]
