"""Explicit product representations with exponents in {-1, 0, 1}.

Generator values are factored over a prime bound into exponent vectors; a
certificate is a choice of signs whose vectors sum to the target's vector.
The search runs constraint propagation (per-prime capacity and forcing
rules) inside a deterministic depth-first search, scanning growing index
windows so small certificates are found quickly.  An unbounded-exponent
lattice solve over the same rows serves as a relaxation oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import SearchExhausted, TargetNotSmooth
from .family import FractionFamily
from .lattice import IntegerLattice

DEFAULT_N0 = 10
DEFAULT_NMAX = 5000
DEFAULT_PRIME_BOUND = 30011
DEFAULT_MAX_TERMS = 64
DEFAULT_NODE_BUDGET = 4_000_000


def _sieve_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    return [p for p in range(limit + 1) if sieve[p]]


def _smooth_factor(v: int, primes: list[int], bound: int) -> dict[int, int] | None:
    fac: dict[int, int] = {}
    for p in primes:
        if p * p > v:
            break
        while v % p == 0:
            fac[p] = fac.get(p, 0) + 1
            v //= p
    if v > 1:
        if v > bound:
            return None
        fac[v] = fac.get(v, 0) + 1
    return fac


@dataclass
class GeneratorBasis:
    """Exponent vectors of the smooth generator values over the factor base.

    Vector keys are (coordinate, prime); single mode folds the denominator
    into coordinate 1 with negative exponents.
    """

    family: FractionFamily
    mode: str
    n0: int
    n_max: int
    prime_bound: int
    rows: list[tuple[int, dict[tuple[int, int], int]]]
    dropped: int

    @property
    def factor_base(self) -> list[int]:
        primes = set()
        for _, vec in self.rows:
            primes.update(p for _, p in vec)
        return sorted(primes)


def build_basis(
    family: FractionFamily,
    n_max: int = DEFAULT_NMAX,
    prime_bound: int = DEFAULT_PRIME_BOUND,
    mode: str = "pair",
    n0: int | None = None,
) -> GeneratorBasis:
    """Factor the generator values for n0 < n <= n_max, keeping smooth rows."""
    if mode not in ("single", "pair"):
        raise ValueError(f"mode must be 'single' or 'pair', got {mode!r}")
    if n0 is None:
        n0 = max(family.n0, DEFAULT_N0)
    if n0 < family.n0:
        n0 = family.n0
    primes = _sieve_primes(prime_bound)
    rows = []
    dropped = 0
    for n in range(n0 + 1, n_max + 1):
        f1 = _smooth_factor(family.value1(n), primes, prime_bound)
        f2 = _smooth_factor(family.value2(n), primes, prime_bound)
        if f1 is None or f2 is None:
            dropped += 1
            continue
        vec: dict[tuple[int, int], int] = {}
        if mode == "pair":
            for p, e in f1.items():
                vec[(1, p)] = e
            for p, e in f2.items():
                vec[(2, p)] = e
        else:
            for p, e in f1.items():
                vec[(1, p)] = e
            for p, e in f2.items():
                vec[(1, p)] = vec.get((1, p), 0) - e
            vec = {k: e for k, e in vec.items() if e}
        rows.append((n, vec))
    return GeneratorBasis(family, mode, n0, n_max, prime_bound, rows, dropped)


def target_vector(basis: GeneratorBasis, targets) -> dict[tuple[int, int], int]:
    """Exponent vector of the target (pair) over the factor base."""
    primes = _sieve_primes(basis.prime_bound)

    def support(frac: Fraction, coord: int, out):
        num = _smooth_factor(frac.numerator, primes, basis.prime_bound)
        den = _smooth_factor(frac.denominator, primes, basis.prime_bound)
        if num is None or den is None:
            raise TargetNotSmooth(f"{frac} has a prime factor above {basis.prime_bound}")
        for p, e in num.items():
            out[(coord, p)] = out.get((coord, p), 0) + e
        for p, e in den.items():
            out[(coord, p)] = out.get((coord, p), 0) - e

    out: dict[tuple[int, int], int] = {}
    if basis.mode == "pair":
        t1, t2 = targets
        support(Fraction(t1), 1, out)
        support(Fraction(t2), 2, out)
    else:
        support(Fraction(targets), 1, out)
    return {k: e for k, e in out.items() if e}


def hnf_solve(basis: GeneratorBasis, tvec: dict) -> dict[int, int] | None:
    """Integer coefficients over the rows reproducing the target vector, or
    None when the target is outside the row lattice (exponents unbounded)."""
    cols = sorted({k for _, vec in basis.rows for k in vec} | set(tvec))
    col_index = {k: i for i, k in enumerate(cols)}
    lat = IntegerLattice(len(cols), track_transform=True)
    for _, vec in basis.rows:
        dense = [0] * len(cols)
        for k, e in vec.items():
            dense[col_index[k]] = e
        lat.insert(dense)
    dense_t = [0] * len(cols)
    for k, e in tvec.items():
        dense_t[col_index[k]] = e
    combo = lat.solve(dense_t)
    if combo is None:
        return None
    return {basis.rows[i][0]: c for i, c in sorted(combo.items()) if c}


class _Searcher:
    """Deterministic DFS with per-column propagation over one row window."""

    def __init__(self, rows, tvec, max_terms, node_budget):
        self.rows = rows
        cols = sorted({k for _, vec in rows for k in vec} | set(tvec))
        self.col_index = {k: i for i, k in enumerate(cols)}
        self.ncols = len(cols)
        self.row_cols = []
        self.col_rows = [[] for _ in range(self.ncols)]
        for ri, (_, vec) in enumerate(rows):
            entries = sorted((self.col_index[k], e) for k, e in vec.items())
            self.row_cols.append(entries)
            for ci, e in entries:
                self.col_rows[ci].append((ri, e))
        self.residual = [0] * self.ncols
        for k, e in tvec.items():
            self.residual[self.col_index[k]] = e
        self.capacity = [0] * self.ncols
        self.open_count = [0] * self.ncols
        for ci in range(self.ncols):
            self.capacity[ci] = sum(abs(e) for _, e in self.col_rows[ci])
            self.open_count[ci] = len(self.col_rows[ci])
        self.eps = [None] * len(rows)
        self.terms = 0
        self.max_terms = max_terms
        self.nodes = 0
        self.budget = node_budget
        self.trail = []

    def _assign(self, ri, s) -> bool:
        """Set eps[ri] = s; returns False on an immediate contradiction."""
        self.eps[ri] = s
        self.trail.append(ri)
        if s:
            self.terms += 1
            if self.terms > self.max_terms:
                return False
        ok = True
        for ci, e in self.row_cols[ri]:
            self.capacity[ci] -= abs(e)
            self.open_count[ci] -= 1
            if s:
                self.residual[ci] -= s * e
            if abs(self.residual[ci]) > self.capacity[ci]:
                ok = False
        return ok

    def _undo_to(self, mark):
        while len(self.trail) > mark:
            ri = self.trail.pop()
            s = self.eps[ri]
            self.eps[ri] = None
            if s:
                self.terms -= 1
            for ci, e in self.row_cols[ri]:
                self.capacity[ci] += abs(e)
                self.open_count[ci] += 1
                if s:
                    self.residual[ci] += s * e

    def _propagate(self) -> bool:
        """Forcing to fixpoint: saturated columns and single-choice rows."""
        changed = True
        while changed:
            changed = False
            for ci in range(self.ncols):
                r = self.residual[ci]
                cap = self.capacity[ci]
                if abs(r) > cap:
                    return False
                if self.open_count[ci] == 0:
                    if r:
                        return False
                    continue
                if r and abs(r) == cap:
                    # every remaining row must push toward the residual
                    for ri, e in self.col_rows[ci]:
                        if self.eps[ri] is None:
                            s = 1 if r * e > 0 else -1
                            if not self._assign(ri, s):
                                return False
                            changed = True
                elif self.open_count[ci] <= 4:
                    for ri, e in self.col_rows[ci]:
                        if self.eps[ri] is not None:
                            continue
                        allowed = [
                            s
                            for s in (1, -1, 0)
                            if abs(r - s * e) <= cap - abs(e)
                            and not (s and self.terms >= self.max_terms)
                        ]
                        if not allowed:
                            return False
                        if len(allowed) == 1:
                            if not self._assign(ri, allowed[0]):
                                return False
                            changed = True
        return True

    def _pick_branch(self):
        best = None
        for ci in range(self.ncols):
            if self.residual[ci] == 0:
                continue
            key = (self.open_count[ci], self.capacity[ci] - abs(self.residual[ci]), ci)
            if best is None or key < best[0]:
                best = (key, ci)
        if best is None:
            return None
        ci = best[1]
        for ri, e in self.col_rows[ci]:
            if self.eps[ri] is None:
                pref = 1 if self.residual[ci] * e > 0 else -1
                return ri, (pref, -pref, 0)
        return None

    def run(self):
        """First satisfying assignment in DFS order, or None; raises
        SearchExhausted only on budget exhaustion."""
        stack = []
        if not self._propagate():
            return None
        while True:
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchExhausted("node budget exhausted")
            if all(r == 0 for r in self.residual):
                return {
                    n: self.eps[ri]
                    for ri, (n, _) in enumerate(self.rows)
                    if self.eps[ri]
                }
            pick = self._pick_branch()
            if pick is None:
                # residuals nonzero but no open rows anywhere useful
                if not self._backtrack(stack):
                    return None
                continue
            ri, order = pick
            stack.append((len(self.trail), ri, list(order), 0))
            if not self._try_top(stack):
                if not self._backtrack(stack):
                    return None

    def _try_top(self, stack) -> bool:
        mark, ri, order, idx = stack[-1]
        while idx < len(order):
            s = order[idx]
            idx += 1
            stack[-1] = (mark, ri, order, idx)
            self._undo_to(mark)
            if self._assign(ri, s) and self._propagate():
                return True
        return False

    def _backtrack(self, stack) -> bool:
        while stack:
            if self._try_top(stack):
                return True
            mark = stack[-1][0]
            self._undo_to(mark)
            stack.pop()
        return False


@dataclass
class RepresentationCertificate:
    """Signed index set: the product of generator values to these exponents
    equals the target exactly."""

    terms: tuple[tuple[int, int], ...]  # (n, eps) with eps = +/-1, n increasing
    mode: str


def bounded_search(
    basis: GeneratorBasis,
    tvec: dict,
    max_terms: int = DEFAULT_MAX_TERMS,
    seed: int = 0,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> RepresentationCertificate:
    """Find signs in {-1, 0, 1} whose row combination hits the target vector.

    Scans growing index windows so small certificates come first; within a
    window the DFS order is fixed, so results are reproducible (seed is
    accepted for interface stability; the default strategy ignores it).
    """
    del seed
    n0, n_max = basis.n0, basis.n_max
    windows = []
    w = max(n0 + 40, min(n_max, n0 + (n_max - n0) // 25))
    while w < n_max:
        windows.append(w)
        w = min(n_max, max(w + 1, int(w * 2.5)))
    windows.append(n_max)
    remaining = node_budget
    for i, w in enumerate(windows):
        rows = [row for row in basis.rows if row[0] <= w]
        budget = remaining if i == len(windows) - 1 else max(1, node_budget // 16)
        searcher = _Searcher(rows, tvec, max_terms, budget)
        try:
            found = searcher.run()
        except SearchExhausted:
            found = None
        remaining -= searcher.nodes
        if found is not None:
            return RepresentationCertificate(
                tuple(sorted(found.items())), basis.mode
            )
        if remaining <= 0:
            break
    raise SearchExhausted(
        "no certificate at this scale; increase n_max, prime_bound, or max_terms"
    )


def verify(cert: RepresentationCertificate, family: FractionFamily, targets) -> bool:
    """Recompute the product in exact rational arithmetic and compare."""
    if cert.mode == "pair":
        p1 = Fraction(1)
        p2 = Fraction(1)
        for n, s in cert.terms:
            p1 *= Fraction(family.value1(n)) ** s
            p2 *= Fraction(family.value2(n)) ** s
        t1, t2 = targets
        return p1 == Fraction(t1) and p2 == Fraction(t2)
    prod = Fraction(1)
    for n, s in cert.terms:
        prod *= Fraction(family.value1(n), family.value2(n)) ** s
    return prod == Fraction(targets)
