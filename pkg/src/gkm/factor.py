"""Splitting homogeneous polynomials into integral linear forms."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .lattice import Weight, prime_factors, primitive_part
from .poly import Poly, exact_divide, linear_from_weight


class NotSplit(ValueError):
    """The polynomial is not a product of linear forms over Q."""


def _divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for p in prime_factors(n):
        k = 0
        m = n
        while m % p == 0:
            m //= p
            k += 1
        divs = [d * p**e for d in divs for e in range(k + 1)]
    return sorted(divs)


def rational_roots(coeffs: list[int]) -> list[Fraction]:
    """Distinct rational roots of ``sum coeffs[k] t^k`` (integer coefficients)."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    roots = []
    if len(coeffs) <= 1:
        return roots
    shift = 0
    while coeffs[shift] == 0:
        shift += 1
    if shift:
        roots.append(Fraction(0))
    c = coeffs[shift:]
    if len(c) == 1:
        return roots
    for q in _divisors(c[-1]):
        for p in _divisors(c[0]):
            if gcd(p, q) != 1:
                continue
            for s in (p, -p):
                r = Fraction(s, q)
                # f(s/q) * q^deg, exact
                val = 0
                for k, a in enumerate(c):
                    val += a * s**k * q ** (len(c) - 1 - k)
                if val == 0 and r not in roots:
                    roots.append(r)
    return sorted(roots)


def _primitive_integer(f: Poly) -> tuple[Fraction, Poly]:
    """Write ``f = c * g`` with ``g`` integral, primitive."""
    from math import lcm

    den = lcm(*(Fraction(c).denominator for c in f.terms.values()))
    num = 0
    for c in f.terms.values():
        num = gcd(num, int(Fraction(c) * den))
    c = Fraction(num, den)
    return c, Poly(f.rank, {e: int(Fraction(v) / c) for e, v in f.terms.items()})


def _restrict_last(f: Poly) -> Poly:
    n = f.rank
    return Poly(n - 1, {e[:-1]: c for e, c in f.terms.items() if e[-1] == 0})


def _find_factor(f: Poly) -> Weight | None:
    """Some primitive integral linear form dividing ``f``, if any."""
    n = f.rank
    for i in range(n):
        w = tuple(int(k == i) for k in range(n))
        if all(e[i] > 0 for e in f.terms):
            return w
    if n == 1:
        return None
    if n == 2:
        d = f.degree()
        coeffs = [f.terms.get((k, d - k), 0) for k in range(d + 1)]
        for r in rational_roots([int(c) for c in coeffs]):
            # f(r, 1) = 0 -> factor x - r y
            if r == 0:
                continue
            return primitive_part((r.denominator, -r.numerator))[0]
        return None
    g = _restrict_last(f)
    cands = linear_factors(g)
    if cands is None:
        return None
    _, forms = cands
    for lp in sorted(set(forms)):
        j = next(k for k, c in enumerate(lp) if c)
        # h(t) = f(e_j + t e_n)
        deg = f.degree()
        hc = [0] * (deg + 1)
        for e, c in f.terms.items():
            if all(e[k] == 0 for k in range(n - 1) if k != j):
                hc[e[-1]] += int(c)
        for tau in rational_roots(hc):
            if tau == 0:
                continue
            ratio = Fraction(-lp[j]) / tau  # t / s
            w = tuple(x * ratio.denominator for x in lp) + (ratio.numerator,)
            w = primitive_part(w)[0]
            if exact_divide(f, linear_from_weight(w)) is not None:
                return w
        if exact_divide(f, linear_from_weight(tuple(lp) + (0,))) is not None:
            return tuple(lp) + (0,)
    return None


def linear_factors(f: Poly) -> tuple[Fraction, list[Weight]] | None:
    """``(content, forms)`` with ``f = content * prod(forms)``, or ``None``."""
    if f.is_zero():
        return None
    c, g = _primitive_integer(f)
    forms: list[Weight] = []
    while g.degree() > 0:
        w = _find_factor(g)
        if w is None:
            return None
        q = exact_divide(g, linear_from_weight(w))
        forms.append(w)
        g = q
    c *= Fraction(g.constant_term())
    return c, sorted(forms, key=lambda w: (sum(abs(x) for x in w), w))


def factor_into_linear_forms(f: Poly) -> tuple[int | Fraction, list[Weight]]:
    """Split a homogeneous ``f`` as an integer content times primitive linear forms.

    Each form has its first nonzero coordinate positive; the sign lives in
    the content. Forms are ordered by coefficient size, then lexicographically. Raises :class:`NotSplit` if ``f`` has an irreducible
    factor of degree > 1 over Q.
    """
    if f.homogeneous_degree() is None and not f.is_zero():
        raise ValueError("factor_into_linear_forms needs a homogeneous polynomial")
    res = linear_factors(f)
    if res is None:
        raise NotSplit(f"{f} does not split into linear forms")
    c, forms = res
    if c.denominator == 1:
        c = c.numerator
    return c, forms
