"""Linear fraction families (a*n + b)/(A*n + B), their derived constraints,
and the modulus bounds controlling which Dirichlet characters can be
constant on the generator values."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .arith import factorize, valuation
from .errors import DegenerateFamily


@dataclass(frozen=True)
class FractionFamily:
    """The coefficient quadruple, normalized so a > 0 and A > 0.

    A coordinate whose leading coefficient was negative is stored negated
    (values for large n are then the absolute values of the originals) and
    flagged.  n0 is the index bound: generators are taken at n > n0.
    """

    a: int
    b: int
    A: int
    B: int
    n0: int = 0
    flipped1: bool = False
    flipped2: bool = False

    @classmethod
    def from_coefficients(
        cls, a: int, b: int, A: int, B: int, n0: int | None = None
    ) -> "FractionFamily":
        if a == 0 or A == 0:
            raise DegenerateFamily("leading coefficients must be nonzero")
        if a * B - A * b == 0:
            raise DegenerateFamily("discriminant a*B - A*b vanishes; fraction is constant")
        flipped1 = a < 0
        flipped2 = A < 0
        if flipped1:
            a, b = -a, -b
        if flipped2:
            A, B = -A, -B
        floor = max(0, (-b) // a, (-B) // A)
        if n0 is None:
            n0 = floor
        elif n0 < floor:
            raise DegenerateFamily(
                f"n0={n0} admits non-positive generator values (need n0 >= {floor})"
            )
        return cls(a, b, A, B, n0, flipped1, flipped2)

    @property
    def discriminant(self) -> int:
        return self.a * self.B - self.A * self.b

    def value1(self, n: int) -> int:
        return self.a * n + self.b

    def value2(self, n: int) -> int:
        return self.A * n + self.B

    def with_n0(self, n0: int) -> "FractionFamily":
        if n0 < self.n0:
            return FractionFamily.from_coefficients(self.a, self.b, self.A, self.B, n0)
        return replace(self, n0=n0)

    def label(self) -> str:
        return f"{self.a},{self.b},{self.A},{self.B}"


def parse_family(text: str, n0: int | None = None) -> FractionFamily:
    """Parse the CLI form "a,b,A,B" (signed decimal integers, no spaces)."""
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"expected four comma-separated integers, got {text!r}")
    a, b, A, B = (int(p) for p in parts)
    return FractionFamily.from_coefficients(a, b, A, B, n0)


@dataclass(frozen=True)
class FamilyConstraints:
    """Content/primitive-part split of the coefficients.

    alpha = gcd(a,b), beta = gcd(A,B), a1 = a/alpha etc., and the two
    discriminants satisfy delta = alpha * beta * delta1 exactly.
    """

    family: FractionFamily
    alpha: int
    beta: int
    a1: int
    b1: int
    A1: int
    B1: int
    delta: int
    delta1: int


def derive_constraints(family: FractionFamily) -> FamilyConstraints:
    delta = family.discriminant
    if delta == 0:
        raise DegenerateFamily("discriminant vanishes")
    alpha = math.gcd(family.a, family.b)
    beta = math.gcd(family.A, family.B)
    a1, b1 = family.a // alpha, family.b // alpha
    A1, B1 = family.A // beta, family.B // beta
    delta1 = a1 * B1 - A1 * b1
    assert delta == alpha * beta * delta1
    return FamilyConstraints(family, alpha, beta, a1, b1, A1, B1, delta, delta1)


@dataclass(frozen=True)
class ModulusBounds:
    """Moduli that bound the conductors of candidate characters.

    legacy and sharp apply to the single-fraction quotient; the two
    simultaneous bounds apply per coordinate of the pair quotient.
    prime_support_notes records, per bound, what refinement did at each prime.
    """

    legacy: int
    sharp: int
    simultaneous_g1: int
    simultaneous_g2: int
    prime_support_notes: tuple[tuple[str, int, str], ...] = ()


def modulus_bounds(cons: FamilyConstraints) -> ModulusBounds:
    f = cons.family
    legacy = 6 * math.gcd(f.a, f.A) * (f.a * f.A) ** 2 * abs(cons.delta) ** 3
    sharp = 6 * abs(cons.delta1)
    g1 = 6 * abs(cons.a1 * cons.delta1)
    g2 = 6 * abs(cons.A1 * cons.delta1)
    return ModulusBounds(legacy, sharp, g1, g2)


def _refine_one(bound: int, relevant: int, cons: FamilyConstraints, name: str):
    """Strip prime powers that cannot carry a non-principal character.

    A prime p >= 5 survives only when it divides the relevant coefficient
    divisor.  2 and 3 are always retained: the principal-forcing argument
    is not available at 2, and at 3 it has an unresolved corner (3 exactly
    divides the bound while dividing none of a1, A1, delta1), so their
    elimination is deferred to the local candidate filter; the corner case
    is flagged in the notes.
    """
    kept = 1
    notes = []
    for p, e in factorize(bound):
        pe = p**e
        if p == 2:
            kept *= pe
            notes.append((name, p, "kept"))
        elif p == 3:
            kept *= pe
            if relevant % 3 == 0:
                notes.append((name, p, "kept: divides coefficient"))
            elif e == 1 and (cons.a1 * cons.A1 * cons.delta1) % 3 != 0:
                notes.append((name, p, "kept: unresolved exceptional case"))
            else:
                notes.append((name, p, "kept: deferred to local filter"))
        else:
            if relevant % p == 0:
                kept *= pe
                notes.append((name, p, "kept: divides coefficient"))
            else:
                notes.append((name, p, "stripped"))
    return kept, notes


def refine_prime_support(cons: FamilyConstraints, bounds: ModulusBounds) -> ModulusBounds:
    both = math.gcd(cons.a1, cons.A1)
    legacy, n1 = _refine_one(bounds.legacy, both, cons, "legacy")
    sharp, n2 = _refine_one(bounds.sharp, both, cons, "sharp")
    g1, n3 = _refine_one(bounds.simultaneous_g1, cons.a1, cons, "g1")
    g2, n4 = _refine_one(bounds.simultaneous_g2, cons.A1, cons, "g2")
    return ModulusBounds(legacy, sharp, g1, g2, tuple(n1 + n2 + n3 + n4))


def never_dividing_primes(cons: FamilyConstraints, coord: int, limit_to: list[int]) -> set[int]:
    """Primes from limit_to that can never divide the coordinate's values.

    p never divides alpha*(a1*n + b1) exactly when p misses the content
    alpha and divides a1 (then a1*n + b1 is a nonzero residue b1 mod p).
    """
    if coord == 1:
        content, lead = cons.alpha, cons.a1
    else:
        content, lead = cons.beta, cons.A1
    return {p for p in limit_to if content % p != 0 and lead % p == 0}
