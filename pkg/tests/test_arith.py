import math
import random

import pytest

from fracrep.arith import (
    MINUS_ONE,
    ONE,
    ZERO,
    RootOfUnity,
    crt_combine,
    cyclotomic_polynomial,
    discrete_log,
    divisors,
    euler_phi,
    factorize,
    reconstruct,
    roots_sum_equals,
    roots_sum_is_zero,
    unit_group,
    valuation,
    xgcd,
)
from fracrep.errors import FactorizationTooLarge, ModuliNotCoprime, NotAUnit


def test_factorize_examples():
    assert factorize(1) == ()
    assert factorize(300) == ((2, 2), (3, 1), (5, 2))
    # 26^2 = 676
    assert factorize(676) == ((2, 2), (13, 2))


def test_factorize_roundtrip():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(1, 10**9)
        fac = factorize(n)
        assert reconstruct(fac) == n
        primes = [p for p, _ in fac]
        assert primes == sorted(primes)
        assert all(e >= 1 for _, e in fac)
    assert reconstruct(factorize(10**9)) == 10**9


def test_factorize_ceiling():
    p = 1_000_003
    with pytest.raises(FactorizationTooLarge):
        factorize(p * p, ceiling=1000)
    assert factorize(p * p, ceiling=2 * 10**6) == ((p, 2),)


def test_valuation_divisors_phi():
    assert valuation(48, 2) == 4
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert euler_phi(300) == 80
    assert euler_phi(1) == 1


def test_unit_group_examples():
    g5 = unit_group(5)
    assert g5.generators == (2,) and g5.orders == (4,)
    g25 = unit_group(25)
    assert g25.generators == (2,) and g25.orders == (20,)
    assert pow(2, 10, 25) == 24  # order is exactly 20
    g8 = unit_group(8)
    assert g8.generators == (7, 5) and g8.orders == (2, 2)
    g1 = unit_group(1)
    assert g1.order == 1


def test_unit_group_structure_small_moduli():
    for q in range(1, 1001):
        g = unit_group(q)
        assert g.order == euler_phi(q)
        for gen, d in zip(g.generators, g.orders):
            assert pow(gen, d, q) == 1 % q
            for p, _ in factorize(d):
                assert pow(gen, d // p, q) != 1 % q


def test_discrete_log_examples():
    assert discrete_log(5, 1) == (0,)
    assert discrete_log(5, 2) == (1,)
    assert discrete_log(25, 24) == (10,)
    with pytest.raises(NotAUnit):
        discrete_log(25, 10)


def test_discrete_log_bijection():
    for q in [1, 2, 8, 24, 360, 625, 997]:
        g = unit_group(q)
        seen = set()
        for x in range(q if q > 1 else 1):
            if math.gcd(x, q) == 1:
                t = discrete_log(q, x)
                assert all(0 <= e < d for e, d in zip(t, g.orders))
                v = 1 % q
                for gen, e in zip(g.generators, t):
                    v = v * pow(gen, e, q) % q
                assert v == x % q
                seen.add(t)
        assert len(seen) == g.order


def test_crt_examples():
    assert crt_combine([(1, 3), (1, 25)]) == (1, 75)
    assert crt_combine([(2, 3), (4, 5)]) == (14, 15)
    assert crt_combine([(0, 1)]) == (0, 1)
    with pytest.raises(ModuliNotCoprime):
        crt_combine([(1, 6), (2, 4)])


def test_xgcd():
    rng = random.Random(1)
    for _ in range(200):
        a, b = rng.randrange(-500, 500), rng.randrange(-500, 500)
        g, x, y = xgcd(a, b)
        assert g == math.gcd(a, b)
        assert a * x + b * y == g


def test_root_of_unity_reduction():
    assert RootOfUnity(6, 2) == RootOfUnity(3, 1)
    assert RootOfUnity(4, 0) == ONE
    assert RootOfUnity(2, 3) == MINUS_ONE
    assert RootOfUnity(8, 6) == RootOfUnity(4, 3)


def test_root_of_unity_algebra():
    rng = random.Random(3)
    vals = [RootOfUnity(rng.randrange(1, 30), rng.randrange(0, 30)) for _ in range(60)]
    for z in vals:
        assert (z * z.conjugate()).is_one
        assert (z.inverse() * z) == ONE
    for x in vals[:20]:
        for y in vals[:20]:
            assert x * y == y * x
    for x, y, z in zip(vals[::3], vals[1::3], vals[2::3]):
        assert (x * y) * z == x * (y * z)
    z = RootOfUnity(5, 2)
    assert z**5 == ONE and z**-1 == z.conjugate()


def test_zero_absorbs():
    assert ZERO * RootOfUnity(3, 1) is ZERO
    assert RootOfUnity(3, 1) * ZERO is ZERO
    assert not ZERO


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_roots_sum_zero_exact():
    # all m-th roots of unity cancel for m > 1
    for m in [2, 3, 4, 6, 12, 15]:
        assert roots_sum_is_zero([RootOfUnity(m, j) for j in range(m)])
    assert roots_sum_is_zero([])
    assert not roots_sum_is_zero([ONE])
    assert not roots_sum_is_zero([ONE, MINUS_ONE, ONE])
    assert roots_sum_is_zero([ONE, MINUS_ONE])
    # 1 + w + w^2 for w of order 3, plus its conjugates, in pieces
    w = RootOfUnity(3, 1)
    assert roots_sum_is_zero([ONE, w, w * w])
    assert not roots_sum_is_zero([ONE, w])


def test_roots_sum_equals():
    w = RootOfUnity(5, 2)
    assert roots_sum_equals([w, w, w], 3, w)
    assert not roots_sum_equals([w, w, w.conjugate()], 3, w)
