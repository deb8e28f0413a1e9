"""Membership of a positive rational (or pair) in the principal class of the
quotient: evaluate every dual character at the target and demand the value 1.

Evaluation is multiplicative over the target's prime factorization, using
Dirichlet values at primes away from the modulus bounds and the pinned
values at bound primes.  A target prime that no generator value can contain
blocks membership outright; an unpinned bound prime makes the verdict
undetermined rather than guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import RootOfUnity, ZERO, factorize
from .characters import conductor, evaluate
from .dual import PINNED, DualCharacter, DualGroup
from .errors import TargetNotPositive, TargetNotReduced
from .family import never_dividing_primes

MEMBER = "member"
NON_MEMBER = "non-member"
UNDETERMINED_VERDICT = "undetermined"


@dataclass
class MembershipVerdict:
    verdict: str
    certificate: list[tuple[int, RootOfUnity | None]]  # (element index, value)
    failing_element: int | None = None
    undetermined_keys: tuple[tuple[int, int], ...] = ()
    blocking_primes: tuple[tuple[int, int], ...] = ()

    @property
    def is_member(self) -> bool:
        return self.verdict == MEMBER


def _as_fraction(target) -> Fraction:
    if isinstance(target, Fraction):
        frac = target
    elif isinstance(target, int):
        frac = Fraction(target)
    elif isinstance(target, tuple):
        num, den = target
        if den == 0:
            raise TargetNotPositive("zero denominator")
        if math.gcd(num, den) != 1:
            raise TargetNotReduced(f"{num}/{den} is not in lowest terms")
        frac = Fraction(num, den)
    else:
        raise TypeError(f"unsupported target {target!r}")
    if frac <= 0:
        raise TargetNotPositive(f"target {frac} is not positive")
    return frac


def _signed_support(frac: Fraction) -> dict[int, int]:
    support: dict[int, int] = {}
    for p, e in factorize(frac.numerator):
        support[p] = support.get(p, 0) + e
    for p, e in factorize(frac.denominator):
        support[p] = support.get(p, 0) - e
    return {p: e for p, e in support.items() if e}


def _coordinate_value(dg: DualGroup, element: DualCharacter, coord: int, support):
    """Value of the element's coordinate function on the support, or the
    (coord, prime) key that blocks evaluation."""
    chi = element.chi1 if coord == 1 else element.chi2_effective
    modulus = dg.modulus1 if coord == 1 else dg.modulus2
    value = RootOfUnity(1, 0)
    for p, e in sorted(support.items()):
        if modulus % p == 0:
            if element.bad_status.get((coord, p)) == PINNED:
                value = value * element.bad_values[(coord, p)] ** e
            else:
                return None, (coord, p)
        else:
            value = value * evaluate(chi, p) ** e
    return value, None


def classify(target, dg: DualGroup) -> MembershipVerdict:
    """Verdict for a positive rational (single mode) or pair (pair mode)."""
    if dg.mode == "pair":
        if not isinstance(target, tuple) or len(target) != 2:
            raise TypeError("pair-mode targets are (rational, rational) tuples")
        fracs = {1: _as_fraction(target[0]), 2: _as_fraction(target[1])}
    else:
        fracs = {1: _as_fraction(target)}
    supports = {coord: _signed_support(f) for coord, f in fracs.items()}

    blocking = []
    for coord, support in supports.items():
        never = never_dividing_primes(dg.constraints, coord, sorted(support))
        blocking.extend((coord, p) for p in sorted(never))
    if blocking:
        return MembershipVerdict(
            NON_MEMBER, [], failing_element=None, blocking_primes=tuple(blocking)
        )

    # single mode uses one set of bad-prime values, keyed by coordinate 1
    certificate: list[tuple[int, RootOfUnity | None]] = []
    failing = None
    undetermined: set[tuple[int, int]] = set()
    for i, element in enumerate(dg.elements):
        total = RootOfUnity(1, 0)
        missing = None
        for coord, support in supports.items():
            if dg.mode == "single":
                num_support = support
                v, key = _coordinate_value(dg, element, 1, num_support)
            else:
                v, key = _coordinate_value(dg, element, coord, support)
            if v is None:
                missing = key
                break
            total = total * v
        if missing is not None:
            certificate.append((i, None))
            undetermined.add(missing)
            continue
        certificate.append((i, total))
        if not total.is_one and failing is None:
            failing = i
    if failing is not None:
        return MembershipVerdict(NON_MEMBER, certificate, failing_element=failing)
    if undetermined:
        return MembershipVerdict(
            UNDETERMINED_VERDICT,
            certificate,
            undetermined_keys=tuple(sorted(undetermined)),
        )
    return MembershipVerdict(MEMBER, certificate)


def criterion_modulus(dg: DualGroup) -> int:
    """Lcm of element conductors, extended by the blocking primes so the
    congruence criterion is readable from a finite table."""
    t = 1
    for e in dg.elements:
        f1, f2 = e.conductors()
        t = math.lcm(t, f1, f2)
    coords = (1, 2) if dg.mode == "pair" else (1,)
    all_bad = sorted({p for _, p in dg.bad_keys})
    for coord in coords:
        for p in sorted(never_dividing_primes(dg.constraints, coord, all_bad)):
            t = math.lcm(t, p)
    return t


def criterion_table(dg: DualGroup, residue_bound: int = 10**4) -> dict:
    """Member/non-member verdict for every residue (pair) mod the criterion
    modulus, evaluated by classifying small representatives."""
    t = criterion_modulus(dg)
    if dg.mode == "pair" and t * t > residue_bound**2:
        raise ValueError(f"criterion modulus {t} exceeds the residue bound")
    if t > residue_bound:
        raise ValueError(f"criterion modulus {t} exceeds the residue bound")

    def rep(r: int) -> int:
        return r if r > 0 else t

    verdicts = {}
    if dg.mode == "single":
        for r in range(t):
            verdicts[r] = classify(Fraction(rep(r)), dg).verdict
    else:
        for r1 in range(t):
            for r2 in range(t):
                verdicts[(r1, r2)] = classify(
                    (Fraction(rep(r1)), Fraction(rep(r2))), dg
                ).verdict
    return {"modulus": t, "verdicts": verdicts}
