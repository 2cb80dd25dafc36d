"""Exact arithmetic on the character lattice Z^n.

Weights are plain tuples of Python ints, coordinates taken in the
simple-root basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

Weight = tuple[int, ...]


def as_weight(w: Iterable[int]) -> Weight:
    return tuple(int(c) for c in w)


def is_zero(w: Sequence[int]) -> bool:
    return not any(w)


def content(w: Sequence[int]) -> int:
    g = 0
    for c in w:
        g = gcd(g, c)
    return g


def primitive_part(w: Sequence[int]) -> tuple[Weight, int]:
    """Split ``w`` as ``g * p`` with ``p`` primitive and sign-normalized.

    The first nonzero coordinate of ``p`` is positive, so ``g`` carries the
    sign of ``w``'s leading coordinate only through ``p``; ``g`` itself is
    always a positive integer.

    >>> primitive_part((-3, 6))
    ((1, -2), 3)
    """
    if is_zero(w):
        raise ValueError("zero weight has no primitive part")
    g = content(w)
    p = tuple(c // g for c in w)
    if next(c for c in p if c) < 0:
        p = tuple(-c for c in p)
    return p, g


def collinear(w1: Sequence[int], w2: Sequence[int]) -> bool:
    if is_zero(w1) or is_zero(w2):
        raise ValueError("collinearity is undefined for the zero weight")
    if len(w1) != len(w2):
        raise ValueError("rank mismatch")
    return primitive_part(w1)[0] == primitive_part(w2)[0]


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``|n|`` by trial division."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class CoprimalityReport:
    """Pairwise coprimality verdict for a list of Euler classes.

    Each violation is ``((i, j), reason)`` with reason one of
    ``"collinear"``, ``"shared-prime p"`` or ``"zero-weight"``; a
    zero-weight violation uses the pair ``(i, i)``.
    """

    violations: tuple[tuple[tuple[int, int], str], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations


def _zero_violations(ws):
    return [((i, i), "zero-weight") for i, w in enumerate(ws) if is_zero(w)]


def check_coprime_K(ws: Sequence[Sequence[int]]) -> CoprimalityReport:
    """Euler classes ``1 - e^w`` are pairwise coprime iff no two ``w`` are collinear."""
    bad = _zero_violations(ws)
    live = [i for i, w in enumerate(ws) if not is_zero(w)]
    prims = {i: primitive_part(ws[i])[0] for i in live}
    for i, j in combinations(live, 2):
        if prims[i] == prims[j]:
            bad.append(((i, j), "collinear"))
    return CoprimalityReport(tuple(bad))


def check_coprime_H(ws: Sequence[Sequence[int]]) -> CoprimalityReport:
    """Linear Euler classes are pairwise coprime over Z.

    Needs non-collinearity plus: no prime divides the contents of two
    weights.
    """
    bad = list(check_coprime_K(ws).violations)
    live = [i for i, w in enumerate(ws) if not is_zero(w)]
    primes = {i: set(prime_factors(content(ws[i]))) for i in live}
    for i, j in combinations(live, 2):
        for p in sorted(primes[i] & primes[j]):
            bad.append(((i, j), f"shared-prime {p}"))
    bad.sort()
    return CoprimalityReport(tuple(bad))


def apply_matrix(m: Sequence[Sequence[int]], w: Sequence[int]) -> Weight:
    return tuple(sum(r[k] * w[k] for k in range(len(w))) for r in m)


def unimodular(m: Sequence[Sequence[int]]) -> bool:
    from fractions import Fraction
    from .linalg import determinant

    return abs(determinant([[Fraction(x) for x in row] for row in m])) == 1
