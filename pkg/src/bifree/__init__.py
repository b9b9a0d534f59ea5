"""Bi-free probability toolkit: bi-noncrossing combinatorics, (l, r)-cumulants,
Fock and B-B-bimodule models, and quantum bi-exchangeability checks."""

from .partitions import Partition, enumerate_nc, is_noncrossing, kernel, leq, mobius_nc, one, zero
from .colorings import (
    BIFREE,
    IDENTITY,
    Coloring,
    TwistFamily,
    enumerate_bnc,
    is_bnc,
    mobius_bnc,
    s_chi,
    untwist,
)
from .cumulants import (
    BifreeCumulants,
    CumulantTable,
    IncompleteFunctionalError,
    MomentFunctional,
    bimoment,
    check_bifree,
    check_factorization,
    check_splitting,
    cumulant,
    moments_from_cumulants,
    twisted_expectation_G,
)
from .fock import TruncatedFreeProduct, default_family, make_bifree_family
from .bimodule import AlgebraB, BBBimodule, BBFreeProduct, check_bb_axioms, make_bifree_B_family
from .quantum import (
    MagicUnitaryRep,
    check_alpha_obstruction,
    check_coassociativity,
    check_identification,
    check_quantum_biexchangeable,
    check_strong_invariance,
    check_vanishing_sum,
    default_block_rep,
    rep_classical,
)

__version__ = "0.1.0"

__all__ = [
    "Partition",
    "enumerate_nc",
    "is_noncrossing",
    "kernel",
    "leq",
    "mobius_nc",
    "one",
    "zero",
    "BIFREE",
    "IDENTITY",
    "Coloring",
    "TwistFamily",
    "enumerate_bnc",
    "is_bnc",
    "mobius_bnc",
    "s_chi",
    "untwist",
    "BifreeCumulants",
    "CumulantTable",
    "IncompleteFunctionalError",
    "MomentFunctional",
    "bimoment",
    "check_bifree",
    "check_factorization",
    "check_splitting",
    "cumulant",
    "moments_from_cumulants",
    "twisted_expectation_G",
    "TruncatedFreeProduct",
    "default_family",
    "make_bifree_family",
    "AlgebraB",
    "BBBimodule",
    "BBFreeProduct",
    "check_bb_axioms",
    "make_bifree_B_family",
    "MagicUnitaryRep",
    "check_alpha_obstruction",
    "check_coassociativity",
    "check_identification",
    "check_quantum_biexchangeable",
    "check_strong_invariance",
    "check_vanishing_sum",
    "default_block_rep",
    "rep_classical",
]
