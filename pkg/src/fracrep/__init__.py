"""Exact computation of product representations of rationals over linear
fraction families: character sums, quotient-group duals, membership tests,
and explicit representation search."""

from .arith import (
    ZERO,
    Factorization,
    RootOfUnity,
    UnitGroupStructure,
    crt_combine,
    discrete_log,
    factorize,
    unit_group,
)
from .characters import (
    DirichletCharacter,
    char_conj,
    char_mul,
    char_order,
    conductor,
    enumerate_characters,
    evaluate,
    gauss_sum,
    induce,
    parity,
)
from .family import (
    FamilyConstraints,
    FractionFamily,
    ModulusBounds,
    derive_constraints,
    modulus_bounds,
    refine_prime_support,
)

__all__ = [
    "ZERO",
    "Factorization",
    "RootOfUnity",
    "UnitGroupStructure",
    "crt_combine",
    "discrete_log",
    "factorize",
    "unit_group",
    "DirichletCharacter",
    "char_conj",
    "char_mul",
    "char_order",
    "conductor",
    "enumerate_characters",
    "evaluate",
    "gauss_sum",
    "induce",
    "parity",
    "FamilyConstraints",
    "FractionFamily",
    "ModulusBounds",
    "derive_constraints",
    "modulus_bounds",
    "refine_prime_support",
]
