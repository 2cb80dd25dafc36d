"""Sparse exact polynomials: Z[x_1..x_n] and the group ring Z[Z^n].

A ring element is a dict from exponent tuples to nonzero coefficients.
Coefficients are Python ints, or Fractions where exact division forces
them (quotients by imprimitive weights); :meth:`is_integral` reports
which.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from ._backend import add_terms, mul_terms
from .lattice import is_zero


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _gradlex_key(e):
    return (sum(e), e)


class _Sparse:
    """Shared machinery for :class:`Poly` and :class:`Laurent`."""

    __slots__ = ("rank", "terms", "_hash")
    allow_negative = False

    def __init__(self, rank: int, terms: Mapping[tuple, object] | None = None):
        self.rank = rank
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != rank:
                    raise ValueError(f"exponent {e} has wrong length for rank {rank}")
                if not self.allow_negative and min(e, default=0) < 0:
                    raise ValueError("negative exponent in a polynomial")
                c = _norm_coeff(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, rank, terms):
        obj = cls.__new__(cls)
        obj.rank = rank
        obj.terms = {e: _norm_coeff(c) for e, c in terms.items()}
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, rank: int):
        return cls._raw(rank, {})

    @classmethod
    def const(cls, c, rank: int):
        return cls._raw(rank, {(0,) * rank: c} if c else {})

    @classmethod
    def one(cls, rank: int):
        return cls.const(1, rank)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1):
        return cls(len(exps), {tuple(exps): coeff})

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, _Sparse):
            if type(other) is not type(self):
                raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
            if other.rank != self.rank:
                raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, (int, Rational)):
            return type(self).const(other, self.rank)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._raw(self.rank, add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._raw(self.rank, add_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._raw(self.rank, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, _Sparse):
            if not other:
                return self.zero(self.rank)
            return self._raw(self.rank, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._raw(self.rank, mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = self.one(self.rank)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, _Sparse):
            other = type(self).const(other, self.rank)
        if type(other) is not type(self):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.rank, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _gradlex_key(t[0]), reverse=True)

    def constant_term(self):
        return self.terms.get((0,) * self.rank, 0)

    def coefficient_sum(self):
        return sum(self.terms.values())

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.rank
        return tuple(min(e[i] for e in self.terms) for i in range(self.rank))

    def shift(self, exps: Sequence[int]):
        """Multiply by the monomial with exponent vector ``exps``."""
        return self._raw(self.rank, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def to_json(self):
        return [[list(e), str(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data, rank: int | None = None):
        if rank is None:
            if not data:
                raise ValueError("rank is required to decode the zero element")
            rank = len(data[0][0])
        return cls(rank, {tuple(int(x) for x in e): Fraction(c) for e, c in data})

    def __repr__(self):
        return f"{type(self).__name__}({self.render()})"

    def __str__(self):
        return self.render()

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = self._render_monomial(e, names)
            if mono:
                if c == 1:
                    s = mono
                elif c == -1:
                    s = "-" + mono
                else:
                    s = f"{_fmt(c)}*{mono}"
            else:
                s = _fmt(c)
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _fmt(c):
    if isinstance(c, Fraction):
        return f"({c.numerator}/{c.denominator})" if c.denominator != 1 else str(c.numerator)
    return str(c)


def default_names(rank: int) -> list[str]:
    return [f"x{i + 1}" for i in range(rank)]


class Poly(_Sparse):
    """Element of Z[x_1..x_n] (or Q[...] for rational quotients)."""

    __slots__ = ()
    allow_negative = False

    @classmethod
    def var(cls, i: int, rank: int):
        e = [0] * rank
        e[i] = 1
        return cls._raw(rank, {tuple(e): 1})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """Common total degree of all terms; ``None`` if inhomogeneous or zero."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def _render_monomial(self, e, names):
        names = names or default_names(self.rank)
        bits = []
        for name, k in zip(names, e):
            if k == 1:
                bits.append(name)
            elif k:
                bits.append(f"{name}^{k}")
        return "*".join(bits)

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return _norm_coeff(Fraction(total)) if isinstance(total, Fraction) else total

    def substitute(self, assignment: Mapping[int, object]):
        """Substitute scalars for the variables in ``assignment``.

        The substituted variables are removed; a scalar is returned when
        nothing remains.
        """
        keep = [i for i in range(self.rank) if i not in assignment]
        out = {}
        for e, c in self.terms.items():
            v = c
            for i, x in assignment.items():
                if e[i]:
                    v = v * x ** e[i]
            if v:
                k = tuple(e[i] for i in keep)
                out[k] = out.get(k, 0) + v
        res = Poly(len(keep), out)
        if not keep:
            return res.constant_term()
        return res


class Laurent(_Sparse):
    """Element of the group ring Z[Z^n]; ``e^w`` is the monomial with exponent ``w``."""

    __slots__ = ()
    allow_negative = True

    @classmethod
    def character(cls, w: Sequence[int]):
        return cls._raw(len(w), {tuple(w): 1})

    def _render_monomial(self, e, names):
        if not any(e):
            return ""
        if names is None:
            return "e^(" + ",".join(str(k) for k in e) + ")"
        bits = []
        for name, k in zip(names, e):
            if k == 1:
                bits.append(name)
            elif k:
                bits.append(f"{name}^{k}")
        return "*".join(bits)

    def is_unit_monomial(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())) in (1, -1)

    def inverse_unit(self):
        if not self.is_unit_monomial():
            raise ValueError("not a unit of the group ring")
        (e, c), = self.terms.items()
        return self._raw(self.rank, {tuple(-k for k in e): c})

    def substitute(self, assignment: Mapping[int, object]):
        keep = [i for i in range(self.rank) if i not in assignment]
        out = {}
        for e, c in self.terms.items():
            v = c
            for i, x in assignment.items():
                if e[i]:
                    if x == 0:
                        raise ValueError("unit evaluation undefined")
                    v = v * Fraction(x) ** e[i]
            if v:
                k = tuple(e[i] for i in keep)
                out[k] = out.get(k, 0) + v
        res = Laurent(len(keep), out)
        if not keep:
            return res.constant_term()
        return res

    def to_polynomial(self) -> tuple[Poly, tuple[int, ...]]:
        """Return ``(p, m)`` with ``self = e^m * p`` and ``p`` free of monomial factors."""
        m = self.min_exponents()
        shifted = self.shift(tuple(-k for k in m))
        return Poly._raw(self.rank, shifted.terms), m


# Euler classes ------------------------------------------------------------


def linear_from_weight(w: Sequence[int]) -> Poly:
    """The linear form sum w_i x_i (the H-theory Euler class of ``w``)."""
    if is_zero(w):
        raise ValueError("zero weight has no Euler class")
    n = len(w)
    terms = {}
    for i, c in enumerate(w):
        if c:
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
    return Poly._raw(n, terms)


def euler_from_weight_K(w: Sequence[int]) -> Laurent:
    """``1 - e^w``."""
    if is_zero(w):
        raise ValueError("zero weight has no Euler class")
    n = len(w)
    return Laurent._raw(n, {(0,) * n: 1, tuple(w): -1})


# division ----------------------------------------------------------------


def _split_by_var(f: _Sparse, j: int) -> dict[int, dict]:
    """Group terms by the exponent of variable ``j``."""
    out: dict[int, dict] = {}
    for e, c in f.terms.items():
        out.setdefault(e[j], {})[e] = c
    return out


def divides_linear(w: Sequence[int], f: Poly) -> tuple[bool, Poly | None]:
    """Test whether the linear form of ``w`` divides ``f`` over Q.

    Synthetic division in the lowest-index variable ``x_j`` with
    ``w_j != 0``: f is viewed as a polynomial in ``x_j`` whose coefficients
    live in the other variables.
    """
    if is_zero(w):
        raise ValueError("zero weight has no Euler class")
    if f.rank != len(w):
        raise ValueError("rank mismatch")
    n = f.rank
    if not f.terms:
        return True, Poly.zero(n)
    j = next(i for i, c in enumerate(w) if c)
    lead = Fraction(w[j])
    rest = Poly._raw(n, {e: c for e, c in linear_from_weight(w).terms.items() if not e[j]})
    by = _split_by_var(f, j)
    top = max(by)
    def strip(terms, k):
        return {e[:j] + (e[j] - k,) + e[j + 1:]: c for e, c in terms.items()}

    coeffs = {k: Poly._raw(n, strip(t, k)) for k, t in by.items()}
    quotient = {}
    carry = Poly.zero(n)
    for k in range(top, 0, -1):
        cur = coeffs.get(k, Poly.zero(n)) - carry
        q = cur * (1 / lead)
        for e, c in q.terms.items():
            ee = list(e)
            ee[j] += k - 1
            quotient[tuple(ee)] = c
        carry = q * rest
    remainder = coeffs.get(0, Poly.zero(n)) - carry
    if remainder.terms:
        return False, None
    return True, Poly(n, quotient)


def divides_euler_K(w: Sequence[int], f: Laurent) -> tuple[bool, Laurent | None]:
    """Test whether ``1 - e^w`` divides ``f`` in Q[Z^n].

    ``f`` is treated as a Laurent polynomial in ``z = e^{x_j}`` (``j`` the
    lowest index with ``w_j != 0``) with coefficients in the other
    characters, shifted to non-negative ``z``-degrees, and divided by the
    image of the Euler class normalized to ``1 - m z^k`` with ``k > 0``.
    """
    if is_zero(w):
        raise ValueError("zero weight has no Euler class")
    if f.rank != len(w):
        raise ValueError("rank mismatch")
    n = f.rank
    if not f.terms:
        return True, Laurent.zero(n)
    j = next(i for i, c in enumerate(w) if c)
    flip = w[j] < 0
    v = tuple(-c for c in w) if flip else tuple(w)
    # 1 - e^w = -e^w (1 - e^{-w}); divide by 1 - e^v then fix the unit
    k = v[j]
    m_exp = tuple(0 if i == j else c for i, c in enumerate(v))
    by = _split_by_var(f, j)
    lo, hi = min(by), max(by)
    work = {d: Laurent._raw(n, {e[:j] + (0,) + e[j + 1:]: c for e, c in t.items()}) for d, t in by.items()}
    m = Laurent.character(m_exp)
    m_inv = Laurent.character(tuple(-c for c in m_exp))
    q_by = {}
    for d in range(hi, lo + k - 1, -1):
        cur = work.pop(d, None)
        if cur is None or not cur.terms:
            continue
        # cur z^d = -(cur m^{-1}) z^{d-k} * (-m z^k)
        qd = -(cur * m_inv)
        q_by[d - k] = qd
        work[d - k] = work.get(d - k, Laurent.zero(n)) - qd
    if any(t.terms for t in work.values()):
        return False, None
    quotient = {}
    for d, t in q_by.items():
        for e, c in t.terms.items():
            quotient[e[:j] + (d,) + e[j + 1:]] = c
    q = Laurent(n, quotient)
    if flip:
        q = q * Laurent._raw(n, {tuple(-c for c in w): -1})
    return True, q


def _lex_lead(f: _Sparse):
    e = max(f.terms)
    return e, f.terms[e]


def _poly_exact_divide(f: Poly, g: Poly) -> Poly | None:
    if not g.terms:
        raise ZeroDivisionError("division by zero polynomial")
    ge, gc = _lex_lead(g)
    q = {}
    rem = dict(f.terms)
    n = f.rank
    while rem:
        fe = max(rem)
        if any(a < b for a, b in zip(fe, ge)):
            return None
        te = tuple(a - b for a, b in zip(fe, ge))
        tc = Fraction(rem[fe], gc) if isinstance(rem[fe], int) and isinstance(gc, int) else rem[fe] / gc
        tc = _norm_coeff(tc)
        q[te] = tc
        shifted = {tuple(a + b for a, b in zip(e, te)): c for e, c in g.terms.items()}
        rem = add_terms(rem, shifted, -tc)
    return Poly(n, q)


def exact_divide(f, g):
    """Exact quotient ``f / g`` over Q, or ``None`` if ``g`` does not divide ``f``.

    Works for :class:`Poly` and :class:`Laurent` alike (the latter via
    monomial normalization, since monomials are units).
    """
    if type(f) is not type(g):
        raise TypeError("kind mismatch")
    if f.rank != g.rank:
        raise ValueError("rank mismatch")
    if isinstance(f, Poly):
        return _poly_exact_divide(f, g)
    fp, fm = f.to_polynomial()
    gp, gm = g.to_polynomial()
    q = _poly_exact_divide(fp, gp)
    if q is None:
        return None
    return Laurent._raw(f.rank, q.terms).shift(tuple(a - b for a, b in zip(fm, gm)))
