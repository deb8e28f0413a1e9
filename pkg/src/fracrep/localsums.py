"""Local character sums over divisibility strata at a prime power, the exact
equal-summand test, the per-prime candidate filter, and the primitive-character
constancy scan used by the property suite.

For a prime l with l^alpha the filter modulus, a stratum (beta, gamma) sums
chi1((a1*u + b1)/l^beta) * chi2((A1*u + B1)/l^gamma) over u mod
l^(alpha + max(beta, gamma)) restricted to u where both divisibilities hold.
A character (pair) can only be constant on the generator values if, in every
nonempty stratum, all nonzero summands coincide: a sum of k unit-circle values
has modulus k exactly when the values are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import ZERO, RootOfUnity, factorize, valuation
from .characters import (
    DirichletCharacter,
    char_conj,
    conductor,
    enumerate_characters,
    evaluate,
    is_primitive,
)
from .errors import DegenerateQuadruple, StratumEmpty
from .family import FamilyConstraints


@dataclass(frozen=True)
class Stratum:
    """One admissible divisibility pattern at the prime: l^beta divides the
    first coordinate, l^gamma the second, filtered at modulus l^alpha."""

    prime: int
    alpha: int
    beta: int
    gamma: int

    @property
    def modulus(self) -> int:
        return self.prime**self.alpha

    @property
    def residue_range(self) -> int:
        return self.prime ** (self.alpha + max(self.beta, self.gamma))


@dataclass
class StratumSum:
    """The summand multiset of one local sum for one character pair."""

    stratum: Stratum
    chi1: DirichletCharacter
    chi2: DirichletCharacter
    summands: list  # CharacterValue per contributing u, in u order
    nonzero_count: int

    @property
    def scale(self) -> Fraction:
        return Fraction(1, self.stratum.modulus)

    def numeric_value(self) -> complex:
        total = sum((v.to_complex() for v in self.summands if v is not ZERO), 0j)
        return total / self.stratum.modulus


def default_stratum_cap(cons: FamilyConstraints, prime: int, alpha: int) -> int:
    return valuation(cons.delta1, prime) + 2 * alpha + 1


def _stratum_is_nonempty(cons: FamilyConstraints, s: Stratum) -> bool:
    # l^beta | a1*u + b1 is solvable iff beta = 0 or l does not divide a1
    # (a1 and b1 are coprime); same on the other side.  Joint solvability
    # then reduces to l^min(beta,gamma) | delta1.
    l = s.prime
    if s.beta > 0 and cons.a1 % l == 0:
        return False
    if s.gamma > 0 and cons.A1 % l == 0:
        return False
    return cons.delta1 % l ** min(s.beta, s.gamma) == 0


def enumerate_strata(
    cons: FamilyConstraints, prime: int, alpha: int, cap: int | None = None
) -> list[Stratum]:
    """All nonempty strata (beta, gamma) with beta, gamma <= cap."""
    if cap is None:
        cap = default_stratum_cap(cons, prime, alpha)
    out = []
    for beta in range(cap + 1):
        for gamma in range(cap + 1):
            s = Stratum(prime, alpha, beta, gamma)
            if _stratum_is_nonempty(cons, s):
                out.append(s)
    return out


def _stratum_keys(cons: FamilyConstraints, s: Stratum) -> list[tuple[int, int]]:
    """(x1 mod l^alpha, x2 mod l^alpha) for each admissible u, in u order.

    x_i are the coordinate values with the prescribed prime power divided out;
    the list keeps multiplicity, one entry per u.
    """
    l, la = s.prime, s.modulus
    pb, pg = l**s.beta, l**s.gamma
    keys = []
    for u in range(s.residue_range):
        v1 = cons.a1 * u + cons.b1
        v2 = cons.A1 * u + cons.B1
        if v1 % pb or v2 % pg:
            continue
        keys.append(((v1 // pb) % la, (v2 // pg) % la))
    return keys


def stratum_sum(
    cons: FamilyConstraints,
    s: Stratum,
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
) -> StratumSum:
    """Exact summand multiset of the local sum for (chi1, chi2)."""
    la = s.modulus
    if chi1.modulus != la or chi2.modulus != la:
        raise ValueError(f"characters must have modulus {la}")
    keys = _stratum_keys(cons, s)
    if not keys:
        raise StratumEmpty(f"no admissible residue for {s}")
    summands = [evaluate(chi1, x1) * evaluate(chi2, x2) for x1, x2 in keys]
    nonzero = sum(1 for v in summands if v is not ZERO)
    return StratumSum(s, chi1, chi2, summands, nonzero)


def all_nonzero_equal(summands: list) -> tuple[bool, RootOfUnity | None]:
    """True iff every nonzero entry is the same exact root of unity."""
    common = None
    for v in summands:
        if v is ZERO or v is None:
            continue
        if common is None:
            common = v
        elif v != common:
            return False, None
    return True, common


@dataclass
class LocalCandidateRecord:
    chi1: DirichletCharacter
    chi2: DirichletCharacter
    constants: dict  # (beta, gamma) -> common nonzero value (None if all zero)


@dataclass
class LocalCandidateSet:
    """Characters (pairs) mod l^alpha surviving the equal-summand filter in
    every nonempty stratum."""

    prime: int
    alpha: int
    mode: str  # "single" | "pair"
    strata: list[Stratum]
    survivors: list[LocalCandidateRecord]

    @property
    def prime_power(self) -> int:
        return self.prime**self.alpha


def local_candidates(
    cons: FamilyConstraints,
    prime: int,
    alpha: int,
    mode: str,
    cap: int | None = None,
) -> LocalCandidateSet:
    """Filter all characters (single) or character pairs (pair) mod l^alpha.

    A survivor must, in every nonempty stratum, have all nonzero summands
    equal and the same nonzero count as the principal character; the zero
    set is character-independent, so the count condition is recorded for
    auditability but cannot fail.
    """
    if mode not in ("single", "pair"):
        raise ValueError(f"mode must be 'single' or 'pair', got {mode!r}")
    la = prime**alpha
    strata = enumerate_strata(cons, prime, alpha, cap)
    keyed = [(s, _stratum_keys(cons, s)) for s in strata]
    chars = enumerate_characters(la)
    principal_counts = {}
    for s, keys in keyed:
        principal_counts[(s.beta, s.gamma)] = sum(
            1 for x1, x2 in keys if x1 % prime and x2 % prime
        )

    def survives(chi1, chi2):
        constants = {}
        for s, keys in keyed:
            vals = []
            count = 0
            common = None
            for x1, x2 in keys:
                v = evaluate(chi1, x1) * evaluate(chi2, x2)
                if v is ZERO:
                    continue
                count += 1
                if common is None:
                    common = v
                elif v != common:
                    return None
            if count != principal_counts[(s.beta, s.gamma)]:
                return None
            constants[(s.beta, s.gamma)] = common
        return constants

    survivors = []
    if mode == "single":
        for chi in chars:
            constants = survives(chi, char_conj(chi))
            if constants is not None:
                survivors.append(LocalCandidateRecord(chi, char_conj(chi), constants))
    else:
        for chi1 in chars:
            for chi2 in chars:
                constants = survives(chi1, chi2)
                if constants is not None:
                    survivors.append(LocalCandidateRecord(chi1, chi2, constants))
    return LocalCandidateSet(prime, alpha, mode, strata, survivors)


def constancy_scan(
    quadruple: tuple[int, int, int, int], modulus: int
) -> list[tuple[DirichletCharacter, RootOfUnity | None]]:
    """For each primitive character mod `modulus`, report the common value of
    chi(u1*k + v1) * conj(chi)(u2*k + v2) over admissible k, or None.

    Admissible means both linear values are coprime to the modulus; a
    character with no admissible k, or with two distinct values, gets None.
    """
    u1, v1, u2, v2 = quadruple
    if math.gcd(u1, v1) != 1 or math.gcd(u2, v2) != 1:
        raise DegenerateQuadruple("coefficient pairs must be coprime")
    if u1 * v2 - u2 * v1 == 0:
        raise DegenerateQuadruple("vanishing discriminant")
    pairs = []
    for k in range(modulus):
        x1 = (u1 * k + v1) % modulus
        x2 = (u2 * k + v2) % modulus
        if math.gcd(x1, modulus) == 1 and math.gcd(x2, modulus) == 1:
            pairs.append((x1, x2))
    out = []
    for chi in enumerate_characters(modulus):
        if not is_primitive(chi):
            continue
        conj = char_conj(chi)
        common = None
        ok = bool(pairs)
        for x1, x2 in pairs:
            v = evaluate(chi, x1) * evaluate(conj, x2)
            if common is None:
                common = v
            elif v != common:
                ok = False
                break
        out.append((chi, common if ok else None))
    return out
