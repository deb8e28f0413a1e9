"""Integer row-lattice utilities: echelon bases built by exact row reduction,
membership solves with coefficient tracking, and a variant that carries an
exact root-of-unity value along with every row.

Rows are kept in echelon form (strictly increasing pivot columns).  Insertion
uses the gcd dance on the pivot column, so entries stay integers throughout.
"""

from __future__ import annotations

import bisect

from .arith import RootOfUnity, xgcd


def _first_nonzero(vec: list[int]) -> int:
    for j, x in enumerate(vec):
        if x:
            return j
    return -1


class IntegerLattice:
    """Echelon basis of the lattice generated by inserted integer rows.

    When track_transform is set, each basis row remembers its expression as
    an integer combination of the inserted rows, so membership solves can
    return coefficients over the original generators.
    """

    def __init__(self, dim: int, track_transform: bool = False):
        self.dim = dim
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []
        self.track = track_transform
        self.combos: list[dict[int, int]] = []
        self._count = 0

    @staticmethod
    def _addmul(dst: dict[int, int], src: dict[int, int], c: int):
        for k, v in src.items():
            nv = dst.get(k, 0) + c * v
            if nv:
                dst[k] = nv
            else:
                dst.pop(k, None)

    def insert(self, vec: list[int]) -> bool:
        """Add a generator row; returns True if the lattice grew."""
        vec = list(vec)
        combo = {self._count: 1} if self.track else {}
        self._count += 1
        grew = False
        j = _first_nonzero(vec)
        while j != -1:
            pos = bisect.bisect_left(self.pivots, j)
            if pos == len(self.pivots) or self.pivots[pos] != j:
                self.rows.insert(pos, vec)
                self.pivots.insert(pos, j)
                if self.track:
                    self.combos.insert(pos, combo)
                return True
            row = self.rows[pos]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for t in range(j, self.dim):
                    vec[t] -= q * row[t]
                if self.track:
                    self._addmul(combo, self.combos[pos], -q)
            else:
                # replace pivot row by the gcd combination, keep reducing
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                new_row = [x * row[t] + y * vec[t] for t in range(self.dim)]
                new_vec = [ag * vec[t] - bg * row[t] for t in range(self.dim)]
                if self.track:
                    new_combo: dict[int, int] = {}
                    self._addmul(new_combo, self.combos[pos], x)
                    self._addmul(new_combo, combo, y)
                    vec_combo: dict[int, int] = {}
                    self._addmul(vec_combo, combo, ag)
                    self._addmul(vec_combo, self.combos[pos], -bg)
                    self.combos[pos] = new_combo
                    combo = vec_combo
                self.rows[pos] = new_row
                vec = new_vec
                grew = True
            j = _first_nonzero(vec)
        return grew

    def reduce(self, vec: list[int]) -> tuple[list[int], dict[int, int]]:
        """Reduce vec by the basis; returns (residual, combo) with
        vec = residual + sum combo[i] * inserted_row_i (combo empty unless
        tracking)."""
        vec = list(vec)
        combo: dict[int, int] = {}
        for pos, j in enumerate(self.pivots):
            if vec[j] == 0:
                continue
            q, r = divmod(vec[j], self.rows[pos][j])
            if r != 0:
                continue
            for t in range(j, self.dim):
                vec[t] -= q * self.rows[pos][t]
            if self.track:
                self._addmul(combo, self.combos[pos], q)
        return vec, combo

    def contains(self, vec: list[int]) -> bool:
        residual, _ = self.reduce(vec)
        return all(x == 0 for x in residual)

    def solve(self, vec: list[int]) -> dict[int, int] | None:
        """Coefficients over inserted rows reproducing vec, or None."""
        assert self.track, "solve requires transform tracking"
        residual, combo = self.reduce(vec)
        if any(residual):
            return None
        return combo


class ValuedRelationSolver:
    """Echelon system of multiplicative relations prod g_k^{v_k} = value.

    Inserting a relation whose vector reduces to zero checks the implied
    value against 1 (consistency); solve_unit pins a single unknown when its
    unit vector lies in the row lattice.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[list[int], RootOfUnity]] = []
        self.pivots: list[int] = []
        self.consistent = True

    def insert(self, vec: list[int], value: RootOfUnity) -> bool:
        """Add a relation; returns False (and latches) on inconsistency."""
        vec = list(vec)
        j = _first_nonzero(vec)
        while j != -1:
            pos = bisect.bisect_left(self.pivots, j)
            if pos == len(self.pivots) or self.pivots[pos] != j:
                self.rows.insert(pos, (vec, value))
                self.pivots.insert(pos, j)
                return self.consistent
            row, rval = self.rows[pos]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for t in range(j, self.dim):
                    vec[t] -= q * row[t]
                value = value * rval ** (-q)
            else:
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                new_row = [x * row[t] + y * vec[t] for t in range(self.dim)]
                new_val = rval**x * value**y
                vec = [ag * vec[t] - bg * row[t] for t in range(self.dim)]
                value = value**ag * rval ** (-bg)
                self.rows[pos] = (new_row, new_val)
            j = _first_nonzero(vec)
        if not value.is_one:
            self.consistent = False
        return self.consistent

    def solve_unit(self, k: int) -> RootOfUnity | None:
        """Value of g_k when determined by the relations, else None."""
        vec = [0] * self.dim
        vec[k] = 1
        value = RootOfUnity(1, 0)
        for pos, j in enumerate(self.pivots):
            if vec[j] == 0:
                continue
            row, rval = self.rows[pos]
            q, r = divmod(vec[j], row[j])
            if r != 0:
                return None
            for t in range(j, self.dim):
                vec[t] -= q * row[t]
            value = value * rval**q
        if any(vec):
            return None
        return value
