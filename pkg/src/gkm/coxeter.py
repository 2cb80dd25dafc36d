"""Weyl group combinatorics of a generalized Cartan matrix.

Conventions: nodes are numbered from 1, ``A[i][j] = <alpha_i^vee, alpha_j>``
and ``s_i(alpha_j) = alpha_j - A[i][j] alpha_i``. Roots are integer vectors
in the simple-root basis.

Minimal coset representatives of ``W/W_P`` are enumerated through the
orbit of a basepoint ``lam`` with ``<lam, alpha_i^vee> = 1`` off the
parabolic and ``0`` on it, so ``Stab(lam) = W_P``. An orbit point
``mu = w.lam`` is stored as its displacement ``c`` with
``mu = lam - sum_j c_j alpha_j``; ``c`` identifies the coset exactly and
needs no realization of ``lam`` itself, which keeps singular (affine)
matrices faithful.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import Weight
from .linalg import determinant


class CartanMatrix:
    """Validated generalized Cartan matrix (symmetrizability not required)."""

    def __init__(self, rows: Sequence[Sequence[int]]):
        a = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(a)
        if n == 0 or any(len(r) != n for r in a):
            raise ValueError("Cartan matrix must be square and non-empty")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError(f"diagonal entry A[{i + 1}][{i + 1}] must be 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise ValueError(f"off-diagonal entry A[{i + 1}][{j + 1}] must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise ValueError(f"A[{i + 1}][{j + 1}] and A[{j + 1}][{i + 1}] must vanish together")
        self.rows = a
        self.n = n

    @classmethod
    def parse(cls, text: str) -> "CartanMatrix":
        """Parse the row-major form ``"2,-1;-4,2"``."""
        try:
            rows = [[int(x) for x in row.split(",")] for row in text.replace(" ", "").split(";")]
        except ValueError as exc:
            raise ValueError(f"cannot parse Cartan matrix {text!r}") from exc
        return cls(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, CartanMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"CartanMatrix({';'.join(','.join(map(str, r)) for r in self.rows)})"

    def to_string(self) -> str:
        return ";".join(",".join(str(x) for x in r) for r in self.rows)

    def reflection_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of ``s_i`` (1-based) on root coordinates."""
        k = i - 1
        n = self.n
        m = [[int(r == c) for c in range(n)] for r in range(n)]
        for j in range(n):
            m[k][j] -= self.rows[k][j]
        return tuple(tuple(r) for r in m)

    def pairing(self, root: Sequence[int], i: int) -> int:
        """``<root, alpha_i^vee>`` for 1-based ``i``."""
        r = self.rows[i - 1]
        return sum(r[j] * root[j] for j in range(self.n))

    def reflect(self, root: Sequence[int], i: int) -> Weight:
        p = self.pairing(root, i)
        out = list(root)
        out[i - 1] -= p
        return tuple(out)

    def principal_minors(self) -> dict[tuple[int, ...], Fraction]:
        out = {}
        for k in range(1, self.n + 1):
            for idx in combinations(range(self.n), k):
                out[idx] = determinant([[self.rows[i][j] for j in idx] for i in idx])
        return out

    def kind(self) -> str:
        """``"finite"``, ``"affine"`` or ``"indefinite"``.

        Principal-minor test: finite iff every principal minor is positive;
        affine iff every proper one is positive and the determinant is 0.
        """
        minors = self.principal_minors()
        full = tuple(range(self.n))
        proper_pos = all(v > 0 for k, v in minors.items() if k != full)
        if proper_pos and minors[full] > 0:
            return "finite"
        if proper_pos and minors[full] == 0:
            return "affine"
        return "indefinite"


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _apply(m, v):
    return tuple(sum(m[i][k] * v[k] for k in range(len(v))) for i in range(len(m)))


@dataclass(frozen=True)
class CosetRep:
    """Minimal-length representative of a coset ``w W_P``.

    ``word`` lists 1-based simple reflections left to right and is the
    ShortLex-least reduced word. ``action`` is the matrix of ``w`` on root
    coordinates. ``displacement`` is ``lam - w.lam`` in root coordinates.
    """

    word: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]
    displacement: Weight
    pairing: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def name(self) -> str:
        return "e" if not self.word else "".join(f"s{i}" for i in self.word)

    @property
    def position(self) -> Weight:
        """``w.lam - lam`` in root coordinates (the moment-map image up to translation)."""
        return tuple(-c for c in self.displacement)


@dataclass(frozen=True)
class InversionDatum:
    root: Weight
    target: CosetRep


def _shortlex(word):
    return (len(word), word)


class Cosets(Sequence):
    """Result of :func:`enumerate_cosets`: reps in (length, ShortLex) order."""

    def __init__(self, cartan, parabolic, max_length, reps, complete):
        self.cartan = cartan
        self.parabolic = parabolic
        self.max_length = max_length
        self.reps = tuple(reps)
        self.complete = complete
        self._by_disp = {r.displacement: r for r in self.reps}

    def __getitem__(self, k):
        return self.reps[k]

    def __len__(self):
        return len(self.reps)

    def lookup(self, displacement) -> CosetRep | None:
        return self._by_disp.get(tuple(displacement))

    def basepoint_pairing(self) -> tuple[int, ...]:
        return tuple(0 if i in self.parabolic else 1 for i in range(1, self.cartan.n + 1))

    def orbit_point(self, word: Iterable[int]) -> Weight:
        """Displacement of ``s_{i1}...s_{ik}.lam`` for an arbitrary word."""
        a = self.cartan
        p = list(self.basepoint_pairing())
        c = [0] * a.n
        for i in reversed(tuple(word)):
            k = i - 1
            t = p[k]
            if t:
                c[k] += t
                for r in range(a.n):
                    p[r] -= t * a.rows[r][k]
        return tuple(c)


def enumerate_cosets(cartan: CartanMatrix, parabolic: Iterable[int], max_length: int | None) -> Cosets:
    """All minimal coset representatives of ``W/W_P`` of length at most ``max_length``.

    ``max_length=None`` enumerates everything and is only allowed when
    the Weyl group is finite.
    """
    a = cartan
    par = frozenset(int(i) for i in parabolic)
    if not par <= set(range(1, a.n + 1)):
        raise ValueError(f"parabolic nodes {sorted(par)} out of range 1..{a.n}")
    if len(par) == a.n:
        raise ValueError("P = G, trivial space")
    if max_length is None and a.kind() != "finite":
        raise ValueError("a length bound is required for infinite Weyl groups")
    if max_length is not None and max_length < 0:
        raise ValueError("max_length must be non-negative")
    n = a.n
    ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    refl = {i: a.reflection_matrix(i) for i in range(1, n + 1)}
    p0 = tuple(0 if i in par else 1 for i in range(1, n + 1))
    level = [CosetRep((), ident, (0,) * n, p0)]
    reps = list(level)
    complete = True
    length = 0
    while level:
        if max_length is not None and length >= max_length:
            complete = not any(t > 0 for rep in level for t in rep.pairing)
            break
        found: dict[Weight, tuple] = {}
        for rep in level:
            for i in range(1, n + 1):
                t = rep.pairing[i - 1]
                if t <= 0:
                    continue
                c = list(rep.displacement)
                c[i - 1] += t
                c = tuple(c)
                word = (i,) + rep.word
                prev = found.get(c)
                if prev is None or _shortlex(word) < _shortlex(prev[0]):
                    p = tuple(rep.pairing[r] - t * a.rows[r][i - 1] for r in range(n))
                    found[c] = (word, rep, i, p)
        level = []
        for c, (word, rep, i, p) in found.items():
            level.append(CosetRep(word, _mat_mul(refl[i], rep.action), c, p))
        level.sort(key=lambda r: r.word)
        reps.extend(level)
        length += 1
    return Cosets(a, par, max_length, reps, complete)


def inversions(rep: CosetRep, cosets: Cosets) -> list[InversionDatum]:
    """Tangent weights at ``rep`` with the coset reached along each.

    For ``w = s_{i1}...s_{ik}`` the roots are
    ``beta_j = s_{i1}...s_{i(j-1)}(alpha_{ij})``; ``r_{beta_j} w`` is the
    word with letter ``j`` deleted.
    """
    a = cosets.cartan
    n = a.n
    out = []
    prefix = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    for j, i in enumerate(rep.word):
        simple = tuple(int(r == i - 1) for r in range(n))
        beta = _apply(prefix, simple)
        target = cosets.lookup(cosets.orbit_point(rep.word[:j] + rep.word[j + 1:]))
        if target is None or target.length >= rep.length:
            raise RuntimeError(f"inversion target of {rep.name} at position {j} not found below it")
        out.append(InversionDatum(beta, target))
        prefix = _mat_mul(prefix, a.reflection_matrix(i))
    return out


def real_roots(cartan: CartanMatrix, height: int) -> list[Weight]:
    """Positive real roots of height at most ``height``, sorted by (height, coords)."""
    if height < 1:
        raise ValueError("height bound must be >= 1")
    n = cartan.n
    simple = [tuple(int(r == k) for r in range(n)) for k in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(1, n + 1):
            gamma = cartan.reflect(beta, i)
            if min(gamma) < 0 or sum(gamma) > height or gamma in seen:
                continue
            seen.add(gamma)
            queue.append(gamma)
    return sorted(seen, key=lambda r: (sum(r), r))
