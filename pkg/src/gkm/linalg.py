"""Exact rational linear systems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from ._backend import row_reduce


def _integer_row(row: Sequence) -> list[int]:
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


@dataclass(frozen=True)
class SolveReport:
    """Outcome of :func:`solve_rational`.

    ``kind`` is ``"unique"``, ``"none"`` or ``"underdetermined"``. For
    ``none``, ``witness`` is the index of an inconsistent reduced equation.
    For ``underdetermined``, ``solution`` is the particular solution with
    all free variables zero and ``kernel`` spans the homogeneous solutions.
    """

    kind: str
    solution: tuple[Fraction, ...] | None = None
    free: tuple[int, ...] = ()
    kernel: tuple[tuple[Fraction, ...], ...] = ()
    witness: int | None = None


def solve_rational(matrix: Sequence[Sequence], rhs: Sequence) -> SolveReport:
    """Solve ``matrix @ v = rhs`` exactly by Gaussian elimination."""
    if len(matrix) != len(rhs):
        raise ValueError("dimension mismatch between matrix and right-hand side")
    ncols = len(matrix[0]) if matrix else 0
    if any(len(r) != ncols for r in matrix):
        raise ValueError("ragged matrix")
    aug = [_integer_row(list(r) + [b]) for r, b in zip(matrix, rhs)]
    rows, pivots = row_reduce(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return SolveReport("none", witness=len(pivots) - 1)
    sol = [Fraction(0)] * ncols
    for r, p in zip(rows, pivots):
        sol[p] = Fraction(r[ncols], r[p])
    free = tuple(c for c in range(ncols) if c not in set(pivots))
    if not free:
        return SolveReport("unique", tuple(sol))
    kernel = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            v[p] = Fraction(-r[f], r[p])
        kernel.append(tuple(v))
    return SolveReport("underdetermined", tuple(sol), free, tuple(kernel))


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0])
    rows, pivots = row_reduce([_integer_row(r) for r in matrix], ncols)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            v[p] = Fraction(-r[f], r[p])
        basis.append(tuple(v))
    return basis


def rank(matrix: Sequence[Sequence], ncols: int | None = None) -> int:
    if not matrix:
        return 0
    if ncols is None:
        ncols = len(matrix[0])
    return len(row_reduce([_integer_row(r) for r in matrix], ncols)[1])


def determinant(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det
