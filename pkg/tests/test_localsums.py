import random

import pytest

from fracrep.arith import MINUS_ONE, ONE, ZERO, RootOfUnity, roots_sum_equals, valuation
from fracrep.characters import (
    char_conj,
    char_order,
    conductor,
    enumerate_characters,
    evaluate,
    principal_character,
)
from fracrep.errors import DegenerateQuadruple, StratumEmpty
from fracrep.family import FractionFamily, derive_constraints
from fracrep.localsums import (
    Stratum,
    all_nonzero_equal,
    constancy_scan,
    enumerate_strata,
    local_candidates,
    stratum_sum,
)


def cons_of(a, b, A, B):
    return derive_constraints(FractionFamily.from_coefficients(a, b, A, B))


@pytest.fixture(scope="module")
def c5151():
    return cons_of(5, 1, 5, -1)


def test_enumerate_strata_examples(c5151):
    s3 = {(s.beta, s.gamma) for s in enumerate_strata(c5151, 3, 1)}
    assert (0, 1) in s3
    s2 = {(s.beta, s.gamma) for s in enumerate_strata(c5151, 2, 2)}
    assert (1, 3) in s2
    s5 = enumerate_strata(c5151, 5, 2)
    assert [(s.beta, s.gamma) for s in s5] == [(0, 0)]


def test_strata_nonempty_criterion_matches_enumeration():
    rng = random.Random(17)
    cases = [(5, 1, 5, -1), (3, 1, 5, 2), (2, 4, 6, 2), (1, 0, 1, 2)]
    for a, b, A, B in cases:
        cons = cons_of(a, b, A, B)
        for prime, alpha in [(2, 1), (2, 2), (3, 1), (5, 1)]:
            cap = 3
            claimed = {(s.beta, s.gamma) for s in enumerate_strata(cons, prime, alpha, cap)}
            brute = set()
            for beta in range(cap + 1):
                for gamma in range(cap + 1):
                    if cons.delta1 % prime ** min(beta, gamma) != 0:
                        continue
                    rng_range = prime ** (alpha + max(beta, gamma))
                    for u in range(rng_range):
                        if (cons.a1 * u + cons.b1) % prime**beta == 0 and (
                            cons.A1 * u + cons.B1
                        ) % prime**gamma == 0:
                            brute.add((beta, gamma))
                            break
            assert claimed == brute


def test_stratum_sum_principal_all_ones(c5151):
    s = Stratum(5, 2, 0, 0)
    chi0 = principal_character(25)
    r = stratum_sum(c5151, s, chi0, chi0)
    assert len(r.summands) == 25
    assert r.nonzero_count == 25
    assert all(v == ONE for v in r.summands)
    assert r.numeric_value() == pytest.approx(1.0)


def test_stratum_sum_mod25_equal_iff_congruent_exponents(c5151):
    s = Stratum(5, 2, 0, 0)
    chars = enumerate_characters(25)
    w_u, w_v = chars[3], chars[7]  # 5 does not divide 3 - 7
    r = stratum_sum(c5151, s, w_u, w_v)
    ok, _ = all_nonzero_equal(r.summands)
    assert not ok
    w_u, w_v = chars[3], chars[13]  # 13 - 3 = 10
    r = stratum_sum(c5151, s, w_u, w_v)
    ok, _ = all_nonzero_equal(r.summands)
    assert ok


def test_stratum_sum_mod3_kills_nonprincipal(c5151):
    s = Stratum(3, 1, 0, 1)
    chars = enumerate_characters(3)
    quad = chars[1]
    r = stratum_sum(c5151, s, principal_character(3), quad)
    ok, _ = all_nonzero_equal(r.summands)
    assert not ok
    values = {v for v in r.summands if v is not ZERO}
    assert len(values) == 2  # distinct values over the residue classes


def test_stratum_empty():
    cons = cons_of(5, 1, 5, -1)
    with pytest.raises(StratumEmpty):
        stratum_sum(cons, Stratum(5, 2, 1, 0), principal_character(25), principal_character(25))


def test_all_nonzero_equal_examples():
    assert all_nonzero_equal([ONE, ONE, ZERO, ONE]) == (True, ONE)
    i = RootOfUnity(4, 1)
    ok, _ = all_nonzero_equal([ONE, i])
    assert not ok
    assert all_nonzero_equal([]) == (True, None)


def test_equal_summand_equivalence_with_exact_magnitude():
    # orders divide 360 so every sum lives in one modest cyclotomic ring
    from fracrep.arith import divisors

    orders = divisors(360)
    rng = random.Random(23)
    for _ in range(400):
        k = rng.randrange(1, 8)
        if rng.random() < 0.5:
            m = rng.choice(orders)
            z = RootOfUnity(m, rng.randrange(m))
            ms = [z] * k
        else:
            ms = []
            for _ in range(k):
                m = rng.choice(orders)
                ms.append(RootOfUnity(m, rng.randrange(m)))
        ok, _ = all_nonzero_equal(ms)
        # |sum| = count iff all equal, checked exactly
        assert roots_sum_equals(ms, len(ms), ms[0]) == ok


def test_local_candidates_5151_pair(c5151):
    lc3 = local_candidates(c5151, 3, 1, "pair")
    assert len(lc3.survivors) == 1
    assert lc3.survivors[0].chi1.is_principal and lc3.survivors[0].chi2.is_principal

    lc4 = local_candidates(c5151, 2, 2, "pair")
    assert len(lc4.survivors) == 1
    assert lc4.survivors[0].chi1.is_principal and lc4.survivors[0].chi2.is_principal

    lc25 = local_candidates(c5151, 5, 2, "pair")
    assert len(lc25.survivors) == 80
    # exponent tuples are cyclic: survivor iff 5 | (u - v)
    for rec in lc25.survivors:
        u, v = rec.chi1.exponents[0], rec.chi2.exponents[0]
        assert (u - v) % 5 == 0
    expected = {(u, v) for u in range(20) for v in range(20) if (u - v) % 5 == 0}
    got = {(r.chi1.exponents[0], r.chi2.exponents[0]) for r in lc25.survivors}
    assert got == expected


def test_local_candidates_principal_always_survives():
    rng = random.Random(5)
    count = 0
    while count < 12:
        a, b, A, B = (rng.randrange(-9, 10) for _ in range(4))
        if a == 0 or A == 0 or a * B - A * b == 0:
            continue
        count += 1
        cons = cons_of(a, b, A, B)
        for prime, alpha in [(2, 1), (3, 1)]:
            lc = local_candidates(cons, prime, alpha, "pair")
            assert any(r.chi1.is_principal and r.chi2.is_principal for r in lc.survivors)
            constants = next(
                r.constants
                for r in lc.survivors
                if r.chi1.is_principal and r.chi2.is_principal
            )
            assert all(c is None or c == ONE for c in constants.values())


def test_local_candidates_single_mode(c5151):
    lc = local_candidates(c5151, 5, 2, "single")
    # pairs (chi, conj chi) survive iff 5 | 2u
    got = {r.chi1.exponents[0] for r in lc.survivors}
    assert got == {0, 5, 10, 15}
    for rec in lc.survivors:
        assert rec.chi2 == char_conj(rec.chi1)


def test_filter_monotone_under_conductor_reduction(c5151):
    # survivors mod 25 with conductor 5 parts must survive the mod-5 filter
    lc25 = local_candidates(c5151, 5, 2, "pair")
    lc5 = local_candidates(c5151, 5, 1, "pair")
    small = {(r.chi1.exponents, r.chi2.exponents) for r in lc5.survivors}
    from fracrep.characters import restrict

    for rec in lc25.survivors:
        if conductor(rec.chi1) <= 5 and conductor(rec.chi2) <= 5:
            r1 = restrict(rec.chi1, 5)
            r2 = restrict(rec.chi2, 5)
            assert (r1.exponents, r2.exponents) in small


def test_constancy_scan_examples():
    # fraction k/1 mod 5: no primitive character is constant
    for chi, const in constancy_scan((1, 0, 0, 1), 5):
        assert const is None

    # (1,1,1,-1) mod 8: neither primitive character is constant
    records = constancy_scan((1, 1, 1, -1), 8)
    assert len(records) == 2
    assert all(const is None for _, const in records)

    # (5,1,5,-1) mod 3: a single admissible class makes the quadratic
    # character a (vacuous) witness; 3 divides 6*|delta1| = 60 as required
    records = constancy_scan((5, 1, 5, -1), 3)
    assert len(records) == 1
    chi, const = records[0]
    assert char_order(chi) == 2 and const is not None


def test_constancy_scan_validation():
    with pytest.raises(DegenerateQuadruple):
        constancy_scan((2, 4, 1, 1), 5)
    with pytest.raises(DegenerateQuadruple):
        constancy_scan((1, 1, 1, 1), 5)


def test_constancy_witness_divisibility_small():
    rng = random.Random(41)
    prime_powers = [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27]
    for _ in range(120):
        u1, u2 = rng.randrange(1, 21), rng.randrange(1, 21)
        v1, v2 = rng.randrange(-20, 21), rng.randrange(-20, 21)
        import math

        if math.gcd(u1, v1) != 1 or math.gcd(u2, v2) != 1:
            continue
        d1 = u1 * v2 - u2 * v1
        if d1 == 0:
            continue
        for D in prime_powers:
            p = [q for q, _ in __import__("fracrep.arith", fromlist=["factorize"]).factorize(D)][0]
            t = valuation(D, p)
            for chi, const in constancy_scan((u1, v1, u2, v2), D):
                if const is None or chi.is_principal:
                    continue
                assert (6 * abs(d1)) % D == 0
                if p >= 5:
                    assert d1 % p**t == 0
                else:
                    assert d1 % p ** (t - 1) == 0
