import random

import pytest

from fracrep.errors import DegenerateFamily
from fracrep.family import (
    FractionFamily,
    derive_constraints,
    modulus_bounds,
    never_dividing_primes,
    parse_family,
    refine_prime_support,
)


def fam(a, b, A, B, n0=None):
    return FractionFamily.from_coefficients(a, b, A, B, n0)


def test_derive_constraints_examples():
    c = derive_constraints(fam(5, 1, 5, -1))
    assert (c.alpha, c.beta) == (1, 1)
    assert c.delta == -10 and c.delta1 == -10

    c = derive_constraints(fam(3, 1, 5, 2))
    assert (c.a1, c.b1, c.A1, c.B1) == (3, 1, 5, 2)
    assert c.delta1 == 1

    c = derive_constraints(fam(2, 4, 6, 2))
    assert (c.alpha, c.beta) == (2, 2)
    assert (c.a1, c.b1, c.A1, c.B1) == (1, 2, 3, 1)
    assert c.delta1 == -5 and c.delta == -20


def test_degenerate_families():
    with pytest.raises(DegenerateFamily):
        fam(1, 2, 1, 2)
    with pytest.raises(DegenerateFamily):
        fam(0, 1, 1, 2)
    with pytest.raises(DegenerateFamily):
        fam(2, 4, 1, 2)  # 2*2 - 4*1 = 0


def test_normalization_and_n0():
    f = fam(-5, -1, 5, -1)
    assert (f.a, f.b) == (5, 1) and f.flipped1 and not f.flipped2
    f = fam(5, 1, 5, -1)
    assert f.n0 == 0
    f = fam(1, -10, 1, 1)
    assert f.n0 == 10
    assert f.value1(11) == 1
    with pytest.raises(DegenerateFamily):
        fam(1, -10, 1, 1, n0=3)


def test_parse_family():
    f = parse_family("5,1,5,-1")
    assert (f.a, f.b, f.A, f.B) == (5, 1, 5, -1)
    with pytest.raises(ValueError):
        parse_family("5,1,5")


def test_content_split_random_families():
    rng = random.Random(2024)
    count = 0
    while count < 10**4:
        a, b, A, B = (rng.randrange(-100, 101) for _ in range(4))
        if a == 0 or A == 0 or a * B - A * b == 0:
            continue
        count += 1
        c = derive_constraints(fam(a, b, A, B))
        assert c.delta == c.alpha * c.beta * c.delta1
        assert c.alpha > 0 and c.beta > 0 and c.delta1 != 0
        import math

        assert math.gcd(c.a1, c.b1) == 1 and math.gcd(c.A1, c.B1) == 1


def test_modulus_bounds_examples():
    c = derive_constraints(fam(5, 1, 5, -1))
    b = modulus_bounds(c)
    assert b.sharp == 60
    assert b.simultaneous_g1 == 300 and b.simultaneous_g2 == 300
    assert b.legacy == 6 * 5 * 625 * 1000

    c = derive_constraints(fam(3, 1, 5, 2))
    b = modulus_bounds(c)
    assert (b.simultaneous_g1, b.simultaneous_g2) == (18, 30)


def test_refine_prime_support_examples():
    # (3,1,5,2): g1 keeps {2,3} support (3 | a1), g2 keeps 5 (5 | A1)
    c = derive_constraints(fam(3, 1, 5, 2))
    r = refine_prime_support(c, modulus_bounds(c))
    assert r.simultaneous_g1 == 18
    assert r.simultaneous_g2 == 30

    # a1=7, A1=11, delta1=77: sharp 6*77 = 462 loses 7 and 11, leaving 6
    from fracrep.family import FamilyConstraints, ModulusBounds

    hypothetical = FamilyConstraints(None, 1, 1, 7, 1, 11, 1, 77, 77)
    bounds = ModulusBounds(legacy=462, sharp=462, simultaneous_g1=462, simultaneous_g2=462)
    r = refine_prime_support(hypothetical, bounds)
    assert r.sharp == 6

    # a real family whose sharp bound carries a stray prime: (7,2,11,35), delta1 = 223
    c3 = derive_constraints(fam(7, 2, 11, 35))
    assert c3.delta1 == 223
    b3 = modulus_bounds(c3)
    r3 = refine_prime_support(c3, b3)
    assert b3.sharp == 6 * 223
    assert r3.sharp == 6  # 223 misses gcd(a1, A1) = 1


def test_refine_keeps_exceptional_three():
    # (5,1,5,-1): sharp 60 = 2^2*3*5; 3 exactly divides and 3 misses a1*A1*delta1
    c = derive_constraints(fam(5, 1, 5, -1))
    r = refine_prime_support(c, modulus_bounds(c))
    assert r.sharp == 60
    assert r.simultaneous_g1 == 300 and r.simultaneous_g2 == 300
    assert ("g1", 3, "kept: unresolved exceptional case") in r.prime_support_notes
    assert ("sharp", 5, "kept: divides coefficient") in r.prime_support_notes


def test_refine_idempotent():
    rng = random.Random(99)
    count = 0
    while count < 300:
        a, b, A, B = (rng.randrange(-40, 41) for _ in range(4))
        if a == 0 or A == 0 or a * B - A * b == 0:
            continue
        count += 1
        c = derive_constraints(fam(a, b, A, B))
        r1 = refine_prime_support(c, modulus_bounds(c))
        r2 = refine_prime_support(c, r1)
        assert (r1.legacy, r1.sharp, r1.simultaneous_g1, r1.simultaneous_g2) == (
            r2.legacy,
            r2.sharp,
            r2.simultaneous_g1,
            r2.simultaneous_g2,
        )


def test_never_dividing_primes():
    c = derive_constraints(fam(5, 1, 5, -1))
    assert never_dividing_primes(c, 1, [2, 3, 5]) == {5}
    assert never_dividing_primes(c, 2, [2, 3, 5]) == {5}
    c = derive_constraints(fam(3, 1, 5, 2))
    assert never_dividing_primes(c, 1, [2, 3, 5]) == {3}
    assert never_dividing_primes(c, 2, [2, 3, 5]) == {5}
