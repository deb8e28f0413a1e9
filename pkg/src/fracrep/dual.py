"""Assembly of the dual group of the quotient of positive rationals (or
pairs) by the subgroup generated by the family's fraction values.

Pipeline: refine the modulus bounds, filter characters locally at every
prime power dividing them, combine local survivors by CRT, and then keep
exactly the combinations that extend to characters of the quotient: the
character product must be constant on generator indices, and the finite
relation system at the bound primes (where Dirichlet values vanish) must be
solvable; its solution pins the element's values at those primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .arith import RootOfUnity, ZERO, discrete_log, factorize, unit_group, valuation
from .characters import (
    DirichletCharacter,
    char_conj,
    char_mul,
    char_order,
    character_index,
    conductor,
    evaluate,
    parity,
    restrict,
)
from .errors import DegenerateFamily
from .family import (
    FamilyConstraints,
    FractionFamily,
    ModulusBounds,
    derive_constraints,
    modulus_bounds,
    refine_prime_support,
)
from .lattice import IntegerLattice, ValuedRelationSolver
from .localsums import LocalCandidateSet, local_candidates

PINNED = "pinned"
UNDETERMINED = "undetermined"


@dataclass
class DualCharacter:
    """One character of the quotient group.

    chi1/chi2 carry the Dirichlet values away from the bound primes; values
    AT bound primes live in bad_values when the generator relations pin them
    (status "pinned"), and are genuinely free otherwise ("undetermined").
    constant is the common character-product value on indices whose
    generator values avoid the bounds entirely (None when no such index
    exists in one period).
    """

    mode: str  # "single" | "pair"
    chi1: DirichletCharacter
    chi2: DirichletCharacter | None
    constant: RootOfUnity | None
    bad_values: dict[tuple[int, int], RootOfUnity]
    bad_status: dict[tuple[int, int], str]

    @property
    def chi2_effective(self) -> DirichletCharacter:
        return self.chi2 if self.chi2 is not None else char_conj(self.chi1)

    @property
    def key(self):
        return (
            self.chi1.exponents,
            None if self.chi2 is None else self.chi2.exponents,
        )

    def element_order(self) -> int:
        n = math.lcm(char_order(self.chi1), char_order(self.chi2_effective))
        if self.constant is not None:
            n = math.lcm(n, self.constant.order)
        return n

    def conductors(self) -> tuple[int, int]:
        return conductor(self.chi1), conductor(self.chi2_effective)


@dataclass
class DualGroup:
    family: FractionFamily
    mode: str
    constraints: FamilyConstraints
    bounds: ModulusBounds
    modulus1: int
    modulus2: int
    elements: list[DualCharacter]
    local_sets: dict[int, LocalCandidateSet]
    window: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def bad_keys(self) -> list[tuple[int, int]]:
        keys = [(1, p) for p, _ in factorize(self.modulus1)]
        if self.mode == "pair":
            keys += [(2, p) for p, _ in factorize(self.modulus2)]
        return keys


def _coordinate_bounds(bounds: ModulusBounds, mode: str) -> tuple[int, int]:
    if mode == "single":
        return bounds.sharp, bounds.sharp
    return bounds.simultaneous_g1, bounds.simultaneous_g2


def _strip(v: int, primes: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    exps = []
    for p in primes:
        e = 0
        while v % p == 0:
            v //= p
            e += 1
        exps.append(e)
    return tuple(exps), v


def _character_from_components(q: int, comps: dict[int, DirichletCharacter]) -> DirichletCharacter:
    exps: list[int] = []
    for p, k in factorize(q):
        comp = comps[p]
        assert comp.modulus == p**k
        exps.extend(comp.exponents)
    return DirichletCharacter(q, tuple(exps))


class _RelationData:
    """Candidate-independent digest of the generator relations in a window.

    Relations are grouped by the exponent pattern of the bound primes in the
    generator values.  Within a group, character products must agree, which
    is a triviality condition on the recorded unit-ratio lattice; one
    representative per group then enters the valued solver.
    """

    def __init__(self, family, cons, mode, m1, m2, bad1, bad2, n0, window):
        self.m1, self.m2 = m1, m2
        self.bad1, self.bad2 = bad1, bad2
        self.mode = mode
        g1, g2 = unit_group(m1), unit_group(m2)
        self.orders = g1.orders + g2.orders
        self.lcm = math.lcm(g1.exponent_lcm, g2.exponent_lcm)
        dims = len(self.orders)
        self.ratios = IntegerLattice(dims)
        for i, d in enumerate(self.orders):
            row = [0] * dims
            row[i] = d
            self.ratios.insert(row)
        if mode == "single":
            self.keys = [(1, p) for p in bad1]
        else:
            self.keys = [(1, p) for p in bad1] + [(2, p) for p in bad2]
        reps: dict[tuple, tuple[int, int]] = {}
        rep_logs: dict[tuple, tuple] = {}
        seen = set()
        self.representatives: list[tuple[tuple, int, int]] = []
        for n in range(n0 + 1, n0 + window + 1):
            e1, v1 = _strip(family.value1(n), bad1)
            e2, v2 = _strip(family.value2(n), bad2)
            if mode == "single":
                evec = tuple(a - b for a, b in zip(e1, e2))
            else:
                evec = e1 + e2
            r1, r2 = v1 % m1, v2 % m2
            trip = (evec, r1, r2)
            if trip in seen:
                continue
            seen.add(trip)
            logs = discrete_log(g1, r1) + discrete_log(g2, r2)
            if evec in reps:
                base = rep_logs[evec]
                self.ratios.insert(
                    [(x - y) % d for x, y, d in zip(logs, base, self.orders)]
                )
            else:
                reps[evec] = (r1, r2)
                rep_logs[evec] = logs
                self.representatives.append(trip)

    def pair_trivial_on_ratios(self, exps: tuple[int, ...]) -> bool:
        L = self.lcm
        scaled = [c * (L // d) for c, d in zip(exps, self.orders)]
        for row in self.ratios.rows:
            if sum(c * v for c, v in zip(scaled, row)) % L:
                return False
        return True

    def solve(self, chi1: DirichletCharacter, chi2: DirichletCharacter):
        """Relation system for one candidate: None if inconsistent, else
        (values, statuses) keyed by (coordinate, prime)."""
        if not self.pair_trivial_on_ratios(chi1.exponents + chi2.exponents):
            return None
        solver = ValuedRelationSolver(len(self.keys))
        for evec, r1, r2 in self.representatives:
            chipart = evaluate(chi1, r1) * evaluate(chi2, r2)
            if not solver.insert(list(evec), chipart.inverse()):
                return None
        values: dict[tuple[int, int], RootOfUnity] = {}
        statuses: dict[tuple[int, int], str] = {}
        for i, key in enumerate(self.keys):
            got = solver.solve_unit(i)
            if got is None:
                statuses[key] = UNDETERMINED
            else:
                values[key] = got
                statuses[key] = PINNED
        return values, statuses


def _constant_on_period(family, chi1, chi2, m, n0):
    """Common nonzero character-product value over one period, or None when
    no index has both values coprime to the moduli; False on mismatch."""
    c = None
    for n in range(n0 + 1, n0 + m + 1):
        v = evaluate(chi1, family.value1(n)) * evaluate(chi2, family.value2(n))
        if v is ZERO:
            continue
        if c is None:
            c = v
        elif v != c:
            return False
    return c


def assemble_dual(
    family: FractionFamily,
    mode: str = "pair",
    stratum_cap: int | None = None,
    window_factor: int = 10,
) -> DualGroup:
    """Compute all dual characters of the quotient for the family."""
    if mode not in ("single", "pair"):
        raise ValueError(f"mode must be 'single' or 'pair', got {mode!r}")
    cons = derive_constraints(family)
    bounds = refine_prime_support(cons, modulus_bounds(cons))
    bound1, bound2 = _coordinate_bounds(bounds, mode)
    m1, m2 = bound1, bound2

    fac1 = dict(factorize(bound1))
    fac2 = dict(factorize(bound2))
    primes = sorted(set(fac1) | set(fac2))
    local_sets: dict[int, LocalCandidateSet] = {}
    per_prime: list[list[tuple[int, DirichletCharacter | None, DirichletCharacter | None]]] = []
    for p in primes:
        a1, a2 = fac1.get(p, 0), fac2.get(p, 0)
        alpha = max(a1, a2)
        lc = local_candidates(cons, p, alpha, mode, cap=stratum_cap)
        local_sets[p] = lc
        comps = []
        for rec in lc.survivors:
            # per-coordinate conductor caps from the two bounds
            f1, f2 = conductor(rec.chi1), conductor(rec.chi2)
            if p**a1 % f1 or p**a2 % f2:
                continue
            c1 = restrict(rec.chi1, p**a1) if a1 else None
            c2 = restrict(rec.chi2, p**a2) if a2 else None
            comps.append((p, c1, c2))
        per_prime.append(comps)

    bad1 = tuple(sorted(fac1))
    bad2 = tuple(sorted(fac2))
    period = math.lcm(m1, m2)
    window = window_factor * period
    for p in sorted(set(bad1) | set(bad2)):
        window *= p
    relations = _RelationData(
        family, cons, mode, m1, m2, bad1, bad2, family.n0, window
    )

    elements: list[DualCharacter] = []
    for combo in product(*per_prime):
        comp1 = {p: c1 for p, c1, _ in combo if c1 is not None}
        comp2 = {p: c2 for p, _, c2 in combo if c2 is not None}
        chi1 = _character_from_components(m1, comp1)
        chi2 = _character_from_components(m2, comp2)
        chi2_eff = char_conj(chi1) if mode == "single" else chi2
        c = _constant_on_period(family, chi1, chi2_eff, period, family.n0)
        if c is False:
            continue
        solved = relations.solve(chi1, chi2_eff)
        if solved is None:
            continue
        values, statuses = solved
        elements.append(
            DualCharacter(
                mode,
                chi1,
                None if mode == "single" else chi2,
                c,
                values,
                statuses,
            )
        )
    elements.sort(
        key=lambda e: (
            character_index(e.chi1),
            0 if e.chi2 is None else character_index(e.chi2),
        )
    )
    return DualGroup(
        family, mode, cons, bounds, m1, m2, elements, local_sets, window
    )


def pin_bad_primes(
    element: DualCharacter,
    family: FractionFamily,
    mode: str | None = None,
    window_factor: int = 10,
) -> DualCharacter:
    """Recompute the bad-prime values of one element from scratch.

    Returns a new element whose values satisfy every generator relation in
    the scan window; raises DegenerateFamily if the element's characters are
    not actually consistent with the family.
    """
    mode = mode or element.mode
    cons = derive_constraints(family)
    bounds = refine_prime_support(cons, modulus_bounds(cons))
    bound1, bound2 = _coordinate_bounds(bounds, mode)
    bad1 = tuple(p for p, _ in factorize(bound1))
    bad2 = tuple(p for p, _ in factorize(bound2))
    period = math.lcm(bound1, bound2)
    window = window_factor * period
    for p in sorted(set(bad1) | set(bad2)):
        window *= p
    relations = _RelationData(
        family, cons, mode, bound1, bound2, bad1, bad2, family.n0, window
    )
    solved = relations.solve(element.chi1, element.chi2_effective)
    if solved is None:
        raise DegenerateFamily("element is not constant on the family's generators")
    values, statuses = solved
    return DualCharacter(
        mode, element.chi1, element.chi2, element.constant, values, statuses
    )


def multiply_elements(dg: DualGroup, x: DualCharacter, y: DualCharacter) -> DualCharacter:
    chi1 = char_mul(x.chi1, y.chi1)
    chi2 = None if dg.mode == "single" else char_mul(x.chi2, y.chi2)
    const = None
    if x.constant is not None and y.constant is not None:
        const = x.constant * y.constant
    values = {}
    statuses = {}
    for key in set(x.bad_status) | set(y.bad_status):
        if x.bad_status.get(key) == PINNED and y.bad_status.get(key) == PINNED:
            values[key] = x.bad_values[key] * y.bad_values[key]
            statuses[key] = PINNED
        else:
            statuses[key] = UNDETERMINED
    return DualCharacter(dg.mode, chi1, chi2, const, values, statuses)


def group_structure(dg: DualGroup) -> dict:
    """Order, element-order histogram, a greedy generating set, and a
    closure check under the induced multiplication."""
    keys = {e.key: i for i, e in enumerate(dg.elements)}
    closed = True
    for x in dg.elements:
        for y in dg.elements:
            if multiply_elements(dg, x, y).key not in keys:
                closed = False
                break
        if not closed:
            break
    histogram: dict[int, int] = {}
    for e in dg.elements:
        histogram[e.element_order()] = histogram.get(e.element_order(), 0) + 1

    def close_over(subset_keys: set) -> set:
        # small groups: iterate pairwise products until stable
        members = set(subset_keys)
        changed = True
        while changed:
            changed = False
            for a in list(members):
                for b in list(members):
                    k = multiply_elements(
                        dg, dg.elements[keys[a]], dg.elements[keys[b]]
                    ).key
                    if k in keys and k not in members:
                        members.add(k)
                        changed = True
        return members

    identity = next(
        (e for e in dg.elements if e.chi1.is_principal and e.chi2_effective.is_principal),
        None,
    )
    generators: list[int] = []
    if identity is not None and closed:
        generated = {identity.key}
        for i, e in enumerate(dg.elements):
            if e.key in generated:
                continue
            generators.append(i)
            generated = close_over(generated | {e.key})
            if len(generated) == dg.order:
                break
    return {
        "order": dg.order,
        "element_order_histogram": dict(sorted(histogram.items())),
        "generator_indices": generators,
        "closed": closed,
    }
