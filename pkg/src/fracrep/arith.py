"""Exact integer primitives: factorization, unit-group structure, discrete
logs, CRT, and roots of unity represented without floating point.

Everything here is pure and cached per modulus; the caches are immutable
once built, so concurrent readers are safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import FactorizationTooLarge, ModuliNotCoprime, NotAUnit

# ((prime, exponent), ...) with primes strictly increasing, exponents >= 1.
Factorization = tuple[tuple[int, int], ...]

DEFAULT_TRIAL_CEILING = 10**7


def factorize(n: int, ceiling: int = DEFAULT_TRIAL_CEILING) -> Factorization:
    """Canonical trial-division factorization of n >= 1 (n = 1 gives ())."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # 6k +/- 1 wheel past 5.
    d = 7
    step = 4
    while d * d <= n:
        if d > ceiling:
            raise FactorizationTooLarge(
                f"cofactor {n} needs trial division beyond ceiling {ceiling}"
            )
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def reconstruct(factors: Factorization) -> int:
    """Inverse of factorize: multiply the prime powers back together."""
    n = 1
    for p, e in factors:
        n *= p**e
    return n


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n nonzero)."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def euler_phi(q: int) -> int:
    phi = 1
    for p, e in factorize(q):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def crt_combine(residues: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine (value, modulus) pairs with pairwise coprime moduli."""
    x, m = 0, 1
    for r, q in residues:
        if q < 1:
            raise ValueError(f"modulus must be positive, got {q}")
        g = math.gcd(m, q)
        if g != 1:
            raise ModuliNotCoprime(f"moduli {m} and {q} share factor {g}")
        # x' = x (mod m), x' = r (mod q)
        _, inv, _ = xgcd(m % q, q)
        x = x + m * ((r - x) * inv % q)
        m *= q
        x %= m
    return x, m


# ---------------------------------------------------------------------------
# Unit groups (Z/q)* with cached discrete-log tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitGroupStructure:
    """Generators and orders of (Z/q)*; every unit has a unique exponent tuple."""

    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    @property
    def order(self) -> int:
        n = 1
        for d in self.orders:
            n *= d
        return n

    @property
    def exponent_lcm(self) -> int:
        return math.lcm(1, *self.orders)


def _primitive_root_mod_p(p: int) -> int:
    if p == 2:
        return 1
    qs = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError(f"no primitive root mod {p}")


def _prime_power_units(p: int, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    q = p**k
    if p == 2:
        if k == 1:
            return (), ()
        if k == 2:
            return (3,), (2,)
        return (q - 1, 5), (2, q // 4)
    g = _primitive_root_mod_p(p)
    if k > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return (g % q,), ((p - 1) * p ** (k - 1),)


@lru_cache(maxsize=None)
def unit_group(q: int) -> UnitGroupStructure:
    """Structure of (Z/q)*: CRT concatenation of prime-power parts."""
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    if q == 1:
        return UnitGroupStructure(1, (), ())
    gens: list[int] = []
    orders: list[int] = []
    parts = factorize(q)
    for p, k in parts:
        pk = p**k
        rest = q // pk
        pgens, porders = _prime_power_units(p, k)
        for g, d in zip(pgens, porders):
            if rest == 1:
                lifted = g
            else:
                lifted, _ = crt_combine([(g, pk), (1, rest)])
            gens.append(lifted)
            orders.append(d)
    return UnitGroupStructure(q, tuple(gens), tuple(orders))


@lru_cache(maxsize=None)
def _dlog_table(q: int) -> dict[int, tuple[int, ...]]:
    g = unit_group(q)
    table: dict[int, tuple[int, ...]] = {1 % q: (0,) * len(g.generators)}
    entries = [(1 % q, (0,) * len(g.generators))]
    for i, (gen, order) in enumerate(zip(g.generators, g.orders)):
        new = []
        for r, t in entries:
            acc = r
            for j in range(1, order):
                acc = acc * gen % q
                tup = t[:i] + (j,) + t[i + 1 :]
                new.append((acc, tup))
        entries.extend(new)
        for r, t in new:
            table[r] = t
    assert len(table) == g.order
    return table


def discrete_log(q: int | UnitGroupStructure, x: int) -> tuple[int, ...]:
    """Exponent tuple of x over unit_group(q) generators; NotAUnit otherwise."""
    modulus = q.modulus if isinstance(q, UnitGroupStructure) else q
    r = x % modulus
    if math.gcd(r, modulus) != 1:
        raise NotAUnit(f"{x} is not a unit mod {modulus}")
    return _dlog_table(modulus)[r]


# ---------------------------------------------------------------------------
# Exact roots of unity
# ---------------------------------------------------------------------------


class Zero:
    """Absorbing zero value of a character at non-units."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __mul__(self, other):
        return self

    __rmul__ = __mul__

    def __bool__(self):
        return False

    def __repr__(self):
        return "0"


ZERO = Zero()


class RootOfUnity:
    """exp(2*pi*i*j/m) stored as the reduced pair (m, j); equality is exact."""

    __slots__ = ("order", "exponent")

    def __init__(self, order: int, exponent: int):
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        exponent %= order
        g = math.gcd(exponent, order)
        object.__setattr__(self, "order", order // g)
        object.__setattr__(self, "exponent", exponent // g)

    def __setattr__(self, name, value):
        raise AttributeError("RootOfUnity is immutable")

    def __eq__(self, other):
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return self.order == other.order and self.exponent == other.exponent

    def __hash__(self):
        return hash((self.order, self.exponent))

    def __mul__(self, other):
        if isinstance(other, Zero):
            return ZERO
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        m = math.lcm(self.order, other.order)
        j = self.exponent * (m // self.order) + other.exponent * (m // other.order)
        return RootOfUnity(m, j)

    def __pow__(self, k: int):
        return RootOfUnity(self.order, self.exponent * k)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    def inverse(self) -> "RootOfUnity":
        return self.conjugate()

    @property
    def is_one(self) -> bool:
        return self.order == 1

    def to_complex(self) -> complex:
        return complex(
            math.cos(2 * math.pi * self.exponent / self.order),
            math.sin(2 * math.pi * self.exponent / self.order),
        )

    def __repr__(self):
        return f"RootOfUnity({self.order}, {self.exponent})"


ONE = RootOfUnity(1, 0)
MINUS_ONE = RootOfUnity(2, 1)


def format_value(v) -> str:
    """Short display form: 0, 1, -1, i, -i, or e(j/m)."""
    if isinstance(v, Zero) or v is None:
        return "0"
    if v.order == 1:
        return "1"
    if v.order == 2:
        return "-1"
    if v.order == 4:
        return "i" if v.exponent == 1 else "-i"
    return f"e({v.exponent}/{v.order})"


# ---------------------------------------------------------------------------
# Exact zero test for sums of roots of unity (cyclotomic-polynomial reduction)
# ---------------------------------------------------------------------------


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Coefficients low-to-high; den monic up to sign of its leading term.
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quot = [0] * max(1, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % lead == 0
        f = c // lead
        quot[i - dd] = f
        for j, dc in enumerate(den):
            num[i - dd + j] -= f * dc
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low-to-high) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n):
        if d == n:
            continue
        poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
        assert all(c == 0 for c in rem)
    return tuple(poly)


def roots_sum_is_zero(roots: list[RootOfUnity]) -> bool:
    """Exact test: does the multiset of roots of unity sum to 0 in C?"""
    if not roots:
        return True
    m = 1
    for z in roots:
        m = math.lcm(m, z.order)
    coeffs = [0] * m
    for z in roots:
        coeffs[z.exponent * (m // z.order)] += 1
    _, rem = _poly_divmod(coeffs, list(cyclotomic_polynomial(m)))
    return all(c == 0 for c in rem)


def roots_sum_equals(roots: list[RootOfUnity], count: int, value: RootOfUnity) -> bool:
    """Exact test of sum(roots) == count * value."""
    return roots_sum_is_zero(list(roots) + [value * MINUS_ONE] * count)
