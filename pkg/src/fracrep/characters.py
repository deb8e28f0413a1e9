"""Dirichlet character engine.

A character mod q is identified by its exponent tuple on the generators of
(Z/q)*, so group operations are componentwise arithmetic and every value is
an exact root of unity.  Gauss sums are the single floating-point quantity
in the package; all filtering logic elsewhere stays exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .arith import (
    ZERO,
    RootOfUnity,
    discrete_log,
    factorize,
    unit_group,
    valuation,
)
from .errors import ModulusMismatch


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod `modulus` with exponents c_i on the unit-group generators.

    The value at a unit x with discrete log (e_i) is the root of unity with
    angle sum(c_i * e_i / order_i); the value at a non-unit is the zero.
    """

    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        g = unit_group(self.modulus)
        if len(self.exponents) != len(g.orders):
            raise ValueError(
                f"expected {len(g.orders)} exponents for modulus {self.modulus}"
            )
        if any(not 0 <= c < d for c, d in zip(self.exponents, g.orders)):
            raise ValueError(f"exponents {self.exponents} out of range for {g.orders}")

    def __call__(self, n: int):
        return evaluate(self, n)

    @property
    def is_principal(self) -> bool:
        return all(c == 0 for c in self.exponents)


def principal_character(q: int) -> DirichletCharacter:
    return DirichletCharacter(q, (0,) * len(unit_group(q).generators))


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q in lexicographic exponent order."""
    orders = unit_group(q).orders
    return [DirichletCharacter(q, t) for t in product(*(range(d) for d in orders))]


def character_index(chi: DirichletCharacter) -> int:
    """Position of chi in the canonical enumerate_characters order."""
    orders = unit_group(chi.modulus).orders
    idx = 0
    for c, d in zip(chi.exponents, orders):
        idx = idx * d + c
    return idx


def character_by_index(q: int, index: int) -> DirichletCharacter:
    orders = unit_group(q).orders
    exps = []
    for d in reversed(orders):
        index, c = divmod(index, d)
        exps.append(c)
    if index:
        raise ValueError(f"index out of range for modulus {q}")
    return DirichletCharacter(q, tuple(reversed(exps)))


@lru_cache(maxsize=None)
def _evaluate_unit(chi: DirichletCharacter, r: int) -> RootOfUnity:
    g = unit_group(chi.modulus)
    e = discrete_log(g, r)
    m = g.exponent_lcm
    j = sum(c * ei * (m // d) for c, ei, d in zip(chi.exponents, e, g.orders))
    return RootOfUnity(m, j)


def evaluate(chi: DirichletCharacter, n: int):
    """chi(n): exact root of unity on units, the zero value otherwise."""
    q = chi.modulus
    if q == 1:
        return RootOfUnity(1, 0)
    r = n % q
    if math.gcd(r, q) != 1:
        return ZERO
    return _evaluate_unit(chi, r)


def char_mul(a: DirichletCharacter, b: DirichletCharacter) -> DirichletCharacter:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"moduli {a.modulus} != {b.modulus}; induce first")
    orders = unit_group(a.modulus).orders
    return DirichletCharacter(
        a.modulus,
        tuple((x + y) % d for x, y, d in zip(a.exponents, b.exponents, orders)),
    )


def char_conj(chi: DirichletCharacter) -> DirichletCharacter:
    orders = unit_group(chi.modulus).orders
    return DirichletCharacter(
        chi.modulus, tuple((-c) % d for c, d in zip(chi.exponents, orders))
    )


def char_order(chi: DirichletCharacter) -> int:
    orders = unit_group(chi.modulus).orders
    return math.lcm(1, *(d // math.gcd(d, c) for c, d in zip(chi.exponents, orders)))


def parity(chi: DirichletCharacter) -> int:
    """chi(-1), returned as +1 or -1."""
    if chi.modulus <= 2:
        return 1
    v = evaluate(chi, chi.modulus - 1)
    return 1 if v.is_one else -1


def conductor(chi: DirichletCharacter) -> int:
    """Smallest modulus f such that chi is induced by a character mod f."""
    q = chi.modulus
    if q == 1:
        return 1
    f = 1
    pos = 0
    for p, k in factorize(q):
        if p == 2:
            if k == 1:
                continue
            if k == 2:
                if chi.exponents[pos] != 0:
                    f *= 4
                pos += 1
                continue
            c_neg, c_five = chi.exponents[pos], chi.exponents[pos + 1]
            pos += 2
            if c_five != 0:
                d = 2 ** (k - 2)
                o = d // math.gcd(d, c_five)
                f *= 4 * o
            elif c_neg != 0:
                f *= 4
        else:
            c = chi.exponents[pos]
            pos += 1
            if c != 0:
                d = (p - 1) * p ** (k - 1)
                o = d // math.gcd(d, c)
                f *= p ** (valuation(o, p) + 1)
    return f


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor(chi) == chi.modulus


def _coprime_lift(h: int, f: int, q: int) -> int:
    # Smallest h + k*f coprime to q; exists because h is a unit mod f.
    x = h
    while math.gcd(x, q) != 1:
        x += f
    return x


def induce(chi: DirichletCharacter, q2: int) -> DirichletCharacter:
    """Character mod q2 (a multiple of chi's modulus) agreeing with chi on
    integers coprime to q2."""
    q = chi.modulus
    if q2 % q != 0:
        raise ValueError(f"{q2} is not a multiple of modulus {q}")
    g2 = unit_group(q2)
    exps = []
    for gen, d in zip(g2.generators, g2.orders):
        v = evaluate(chi, gen)
        assert isinstance(v, RootOfUnity) and d % v.order == 0
        exps.append(v.exponent * (d // v.order))
    return DirichletCharacter(q2, tuple(exps))


def restrict(chi: DirichletCharacter, f: int) -> DirichletCharacter:
    """Character mod f inducing chi; f must be a multiple of the conductor
    dividing the modulus."""
    q = chi.modulus
    if q % f != 0 or f % conductor(chi) != 0:
        raise ValueError(f"{f} must sit between conductor and modulus of chi")
    gf = unit_group(f)
    exps = []
    for gen, d in zip(gf.generators, gf.orders):
        v = evaluate(chi, _coprime_lift(gen, f, q))
        assert isinstance(v, RootOfUnity) and d % v.order == 0
        exps.append(v.exponent * (d // v.order))
    return DirichletCharacter(f, tuple(exps))


def primitive_part(chi: DirichletCharacter) -> DirichletCharacter:
    return restrict(chi, conductor(chi))


def gauss_sum(chi: DirichletCharacter) -> complex:
    """theta = sum over r mod q of chi(r) * exp(2*pi*i*r/q), double precision."""
    q = chi.modulus
    total = 0j
    for r in range(q):
        v = evaluate(chi, r)
        if v is not ZERO:
            total += v.to_complex() * cmath.exp(2j * cmath.pi * r / q)
    if q == 1:
        total = 1 + 0j
    return total
