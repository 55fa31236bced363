"""Exact linear algebra over the rationals with deterministic pivoting.

Vectors are sparse dicts {column index: Fraction}.  Pivot choice is fixed
once and for all (columns in ascending order; among candidate rows the one
whose pivot entry has the smallest numerator+denominator bit-length, ties
by row index) so that reduced forms, kernel bases and membership
coefficients are bit-for-bit reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = dict  # {int: Fraction}, no explicit zeros


def vec_add_scaled(target: Vector, source: Vector, factor: Fraction) -> None:
    if not factor:
        return
    for j, v in source.items():
        acc = target.get(j, ZERO) + factor * v
        if acc:
            target[j] = acc
        else:
            target.pop(j, None)


def _pivot_size(value: Fraction) -> int:
    return abs(value.numerator).bit_length() + value.denominator.bit_length()


def rref(rows: Sequence[Vector], ncols: int) -> tuple[list[Vector], dict[int, int]]:
    """Reduced row echelon form.

    Returns (reduced nonzero rows, {pivot column: row position}),
    with rows listed in ascending pivot-column order and pivot entries 1.
    """
    work = [{j: v for j, v in r.items() if v} for r in rows]
    reduced: list[Vector] = []
    pivots: dict[int, int] = {}
    for col in range(ncols):
        best = None
        for idx, row in enumerate(work):
            v = row.get(col)
            if v:
                size = _pivot_size(v)
                if best is None or (size, idx) < best[0]:
                    best = ((size, idx), idx)
        if best is None:
            continue
        idx = best[1]
        pivot_row = work.pop(idx)
        inv = ONE / pivot_row[col]
        pivot_row = {j: v * inv for j, v in pivot_row.items()}
        for row in work:
            v = row.get(col)
            if v:
                vec_add_scaled(row, pivot_row, -v)
        for row in reduced:
            v = row.get(col)
            if v:
                vec_add_scaled(row, pivot_row, -v)
        pivots[col] = len(reduced)
        reduced.append(pivot_row)
        work = [r for r in work if r]
    order = sorted(pivots)
    rows_sorted = [reduced[pivots[c]] for c in order]
    return rows_sorted, {c: i for i, c in enumerate(order)}


def rank(rows: Sequence[Vector], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def kernel_basis(rows: Sequence[Vector], ncols: int) -> list[Vector]:
    """Basis of {x : A x = 0} where the given rows are the equations.

    One basis vector per free column f (ascending), normalized to x_f = 1.
    """
    reduced, pivots = rref(rows, ncols)
    basis: list[Vector] = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec: Vector = {free: ONE}
        for col, i in pivots.items():
            v = reduced[i].get(free)
            if v:
                vec[col] = -v
        basis.append(vec)
    return basis


def solve(columns: Sequence[Vector], rhs: Vector) -> list[Fraction] | None:
    """Coefficients x with sum_i x_i * columns[i] = rhs, or None.

    Convenience wrapper over LinearSolver for one-shot solves.
    """
    return LinearSolver(columns).solve(rhs)


class LinearSolver:
    """Repeated exact solves against a fixed set of spanning vectors.

    Rows are the given vectors augmented with bookkeeping coordinates;
    elimination pivots only on the vector part, so reducing a target
    vector to zero simultaneously yields its coefficients.
    """

    def __init__(self, columns: Sequence[Vector]):
        self.nvecs = 0
        self._rows: list[tuple[Vector, Vector]] = []  # (vector part, coeff part)
        self._pivots: dict[object, int] = {}
        self.independent = True
        for col in columns:
            self.add(col)

    def add(self, vector: Vector) -> bool:
        """Adjoin a spanning vector; returns False iff it was dependent."""
        idx = self.nvecs
        self.nvecs += 1
        main, coeffs = self._reduce(vector)
        if not main:
            self.independent = False
            return False
        pivot = min(main)
        inv = ONE / main[pivot]
        main = {j: v * inv for j, v in main.items()}
        coeffs = {j: v * inv for j, v in coeffs.items()}
        coeffs[idx] = coeffs.get(idx, ZERO) - inv
        for m, c in self._rows:
            v = m.get(pivot)
            if v:
                vec_add_scaled(m, main, -v)
                vec_add_scaled(c, coeffs, -v)
        self._pivots[pivot] = len(self._rows)
        self._rows.append((main, coeffs))
        return True

    def _reduce(self, vector: Vector) -> tuple[Vector, Vector]:
        main = {j: v for j, v in vector.items() if v}
        coeffs: Vector = {}
        for pivot in sorted(self._pivots):
            v = main.get(pivot)
            if v:
                row_main, row_coeffs = self._rows[self._pivots[pivot]]
                vec_add_scaled(main, row_main, -v)
                vec_add_scaled(coeffs, row_coeffs, -v)
        return main, coeffs

    @property
    def rank(self) -> int:
        return len(self._rows)

    def contains(self, vector: Vector) -> bool:
        main, _ = self._reduce(vector)
        return not main

    def residual(self, vector: Vector) -> Vector:
        """Canonical representative of the vector modulo the span."""
        main, _ = self._reduce(vector)
        return main

    def solve(self, vector: Vector) -> list[Fraction] | None:
        """Coefficients over the added vectors, or None if not in the span.

        Invariant maintained by add/_reduce: vector = residual + sum of
        coeffs[i] * vectors[i], so a zero residual means the coeffs are
        the answer.
        """
        main, coeffs = self._reduce(vector)
        if main:
            return None
        return [coeffs.get(i, ZERO) for i in range(self.nvecs)]


def clear_denominators(vec: Vector) -> Vector:
    """Scale to integer entries with positive leading coefficient, content 1."""
    if not vec:
        return {}
    from math import gcd
    lcm = 1
    for v in vec.values():
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    scaled = {j: v * lcm for j, v in vec.items()}
    g = 0
    for v in scaled.values():
        g = gcd(g, int(v))
    lead = scaled[min(scaled)]
    sign = -1 if lead < 0 else 1
    return {j: Fraction(int(v) * sign, g) for j, v in scaled.items()}
