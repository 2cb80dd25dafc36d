"""q-combinatorics for the based loop group of SU(2).

Univariate q-polynomials are rank-1 :class:`Poly` values. The K-theory
generators ``x_i`` live on the affine A1 graph with vertices identified
with the integers: lengths 0, 1, 2, 3, 4, ... become m = 0, 1, -1, 2, -2, ...
and the edge (m, n) carries the weight ``a + (m+n) q``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .graph import GkmGraph, GraphError, build_graph, change_basis, relabel, reorient
from .poly import Laurent, Poly, exact_divide

QPoly = Poly

# Root coordinates -> (a, q): alpha_1 -> a + q, alpha_2 -> -a, so q is the imaginary root.
OMEGA_BASIS = ((1, -1), (1, 0))


def q(power: int = 1) -> Poly:
    return Poly.monomial((power,))


def q_factorial(a: int) -> Poly:
    """``(1-q)(1-q^2)...(1-q^a)``."""
    if a < 0:
        raise ValueError("q_factorial needs a >= 0")
    out = Poly.one(1)
    for k in range(1, a + 1):
        out = out * (1 - q(k))
    return out


def q_binomial(a: int, b: int) -> Poly:
    """Gaussian binomial ``a!_q / (b!_q (a-b)!_q)``, checked to divide exactly."""
    if a < 0 or b < 0 or b > a:
        raise ValueError(f"q_binomial needs 0 <= b <= a, got ({a}, {b})")
    out = exact_divide(q_factorial(a), q_factorial(b) * q_factorial(a - b))
    if out is None:
        raise ArithmeticError(f"q_binomial({a}, {b}) left a remainder")
    return out


def _monomials_below(n: int, k: int):
    """Exponent vectors in N^n with total degree < k."""
    for d in range(k):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            yield e


def p_k(k: int, lambdas: Sequence):
    """``(1-l_1)...(1-l_n) * sum_{|alpha| < k} l^alpha`` for ring elements ``l_j``."""
    if k <= 0:
        raise ValueError("p_k needs k >= 1")
    if not lambdas:
        raise ValueError("p_k needs at least one argument")
    one = type(lambdas[0]).one(lambdas[0].rank)
    euler = one
    for lam in lambdas:
        if lam.is_zero():
            raise ValueError("p_k arguments must be nonzero")
        euler = euler * (one - lam)
    # powers[j][e] = lambda_j^e
    powers = []
    for lam in lambdas:
        row = [one]
        for _ in range(k - 1):
            row.append(row[-1] * lam)
        powers.append(row)
    total = one.zero(one.rank)
    for e in _monomials_below(len(lambdas), k):
        term = one
        for j, ej in enumerate(e):
            if ej:
                term = term * powers[j][ej]
        total = total + term
    return euler * total


def _check_mnl(m, n, l):
    if m < 1 or n < 1 or l < 0:
        raise ValueError(f"a_mnl needs m, n >= 1 and l >= 0, got ({m}, {n}, {l})")


def a_mnl(m: int, n: int, l: int) -> Poly:
    """``p_m(q^n, q^{n+1}, ..., q^{n+l})`` by the definition."""
    _check_mnl(m, n, l)
    return p_k(m, [q(n + j) for j in range(l + 1)])


def a_mnl_qbinom(m: int, n: int, l: int) -> Poly:
    """Same value via ``(1-q^n)...(1-q^{n+l}) * sum_{i<m} q^{in} binom(l+i, l)_q``."""
    _check_mnl(m, n, l)
    front = Poly.one(1)
    for j in range(l + 1):
        front = front * (1 - q(n + j))
    s = Poly.zero(1)
    for i in range(m):
        s = s + q(i * n) * q_binomial(l + i, l)
    return front * s


@dataclass
class SymmetryReport:
    pairs_checked: int = 0
    failures: list = field(default_factory=list)
    max_degree: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"pairs_checked": self.pairs_checked, "failures": self.failures}


def check_symmetry(M: int, L: int) -> SymmetryReport:
    """``a_{mnl} == a_{nml}`` and both computation paths agree, for m, n <= M, l <= L."""
    if M < 1 or L < 0:
        raise ValueError("bounds must satisfy M >= 1, L >= 0")
    rep = SymmetryReport()
    cache = {}
    for l in range(L + 1):
        for m in range(1, M + 1):
            for n in range(1, M + 1):
                v = cache[(m, n, l)] = a_mnl(m, n, l)
                rep.max_degree = max(rep.max_degree, v.degree())
                if v != a_mnl_qbinom(m, n, l):
                    rep.failures.append({"m": m, "n": n, "l": l, "reason": "paths disagree"})
        for m in range(1, M + 1):
            for n in range(m, M + 1):
                rep.pairs_checked += 1
                if cache[(m, n, l)] != cache[(n, m, l)]:
                    rep.failures.append({"m": m, "n": n, "l": l, "reason": "not symmetric"})
    return rep


# the closed difference form ---------------------------------------------------------------


def _omega_coeff(i: int, j: int, l: int) -> Poly:
    """``q^{ij} (i+l)!_q (j+l)!_q / (i!_q j!_q l!_q)``, a polynomial."""
    rising = Poly.one(1)
    for t in range(j + 1, j + l + 1):
        rising = rising * (1 - q(t))
    return q(i * j) * q_binomial(i + l, l) * rising


def omega_f(i: int, j: int, l: int) -> Poly:
    """The delta-i component of the form."""
    return _omega_coeff(i, j, l) * (1 - q(j))


def omega_g(i: int, j: int, l: int) -> Poly:
    """The delta-j component of the form."""
    return _omega_coeff(i, j, l) * (1 - q(i))


@dataclass
class ClosednessReport:
    squares_checked: int = 0
    failures: list = field(default_factory=list)
    boundary: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"pairs_checked": self.squares_checked, "failures": self.failures}


def boundary_integral(m: int, n: int, l: int) -> Poly:
    """Counterclockwise sum of the form around the rectangle ``[0,m] x [0,n]``."""
    total = Poly.zero(1)
    for i in range(m):
        total = total + omega_f(i, 0, l) - omega_f(i, n, l)
    for j in range(n):
        total = total + omega_g(m, j, l) - omega_g(0, j, l)
    return total


def check_omega_closed(I: int, J: int, l: int) -> ClosednessReport:
    """Vanishing of the exterior difference on every unit square of ``[0,I] x [0,J]``.

    Also checks the Stokes bookkeeping on every sub-rectangle ``[0,m] x [0,n]``
    with ``m, n >= 1``: the right side sums to ``a_{nml}``, the top side to
    ``a_{mnl}``, and the boundary integral vanishes.
    """
    if I < 1 or J < 1 or l < 0:
        raise ValueError("need I, J >= 1 and l >= 0")
    rep = ClosednessReport()
    for i in range(I):
        for j in range(J):
            rep.squares_checked += 1
            d = (omega_f(i, j + 1, l) - omega_f(i, j, l)) - (omega_g(i + 1, j, l) - omega_g(i, j, l))
            if not d.is_zero():
                rep.failures.append({"square": [i, j], "l": l, "d_omega": d.to_json()})
    for m in range(1, I + 1):
        for n in range(1, J + 1):
            right = sum((omega_g(m, j, l) for j in range(n)), Poly.zero(1))
            top = sum((omega_f(i, n, l) for i in range(m)), Poly.zero(1))
            entry = {"m": m, "n": n, "l": l}
            if right != a_mnl(n, m, l):
                rep.failures.append({**entry, "reason": "right side differs from a_nml"})
            if top != a_mnl(m, n, l):
                rep.failures.append({**entry, "reason": "top side differs from a_mnl"})
            if not boundary_integral(m, n, l).is_zero():
                rep.failures.append({**entry, "reason": "boundary integral nonzero"})
            rep.boundary.append(entry)
    return rep


# the based loop group ---------------------------------------------------------------


@dataclass(frozen=True)
class OmegaSU2Index:
    i: int

    def __post_init__(self):
        if self.i == 0:
            raise ValueError("index 0 is the unit class, not a bouquet generator")

    @property
    def l(self) -> int:
        return abs(self.i) - 1

    @property
    def k(self) -> int:
        twice = abs(2 * self.i - 1) - 1
        return twice // 2

    @property
    def length(self) -> int:
        return self.l + self.k + 1


def m_of_length(length: int) -> int:
    """0, 1, 2, 3, 4, ... -> 0, 1, -1, 2, -2, ..."""
    return (length + 1) // 2 if length % 2 else -(length // 2)


def length_of_m(m: int) -> int:
    return 2 * m - 1 if m > 0 else -2 * m


def omega_su2_graph(max_length: int) -> GkmGraph:
    """Affine A1 flag graph ``G/P`` in (a, q) coordinates with integer vertex ids.

    Built from the Cartan matrix, moved to the (a, q) basis, relabelled by
    the alternating identification, and with each edge (m, n) oriented to
    the weight ``a + (m+n) q`` after asserting it agrees up to sign.
    """
    g = build_graph("2,-2;-2,2", [2], max_length)
    g = change_basis(g, OMEGA_BASIS, ["a", "q"])
    g = relabel(g, {v.id: str(m_of_length(v.length)) for v in g.vertices})
    target = {}
    for e in g.edges:
        m, n = int(e.source), int(e.target)
        w = (1, m + n)
        if e.weight not in (w, (-1, -(m + n))):
            raise GraphError(f"edge ({m}, {n}) has weight {e.weight}, expected +-{w}")
        target[(e.source, e.target)] = w
    return reorient(g, target)


def _ch(a: int, qq: int) -> Laurent:
    return Laurent.character((a, qq))


def omega_su2_value(i: OmegaSU2Index | int, m: int) -> Laurent:
    """``x_i(m)`` from the three-case formula."""
    idx = i if isinstance(i, OmegaSU2Index) else OmegaSU2Index(i)
    l, k = idx.l, idx.k
    if m > k:
        return p_k(m - k, [_ch(-1, t) for t in range(-m - k, -m + l + 1)])
    if m < -l:
        return p_k(-m - l, [_ch(1, t) for t in range(m - l, m + k + 1)])
    return Laurent.zero(2)


def omega_su2_K_generator(i: OmegaSU2Index | int, g: GkmGraph):
    """The explicit K class ``x_i`` on a graph from :func:`omega_su2_graph`.

    Index 0 gives the unit class. The class records the unit ``u`` with
    ``x_i(i) = u * euler_class(i)`` in ``flags`` as ``"anchor-unit:<u>"``.
    """
    from .ring import GkmClass, constant_class, euler_class

    if (isinstance(i, int) and i == 0) or (isinstance(i, OmegaSU2Index) and i.i == 0):
        c = constant_class(g, "K")
        c.anchor = "0"
        return c
    idx = i if isinstance(i, OmegaSU2Index) else OmegaSU2Index(i)
    anchor = str(idx.i)
    if anchor not in g.ids():
        raise ValueError(f"vertex {idx.i} is outside the truncation")
    vals = {v: omega_su2_value(idx, int(v)) for v in g.ids()}
    c = GkmClass("K", g, vals, anchor=anchor)
    unit = exact_divide(vals[anchor], euler_class(g, anchor, "K"))
    if unit is not None:
        c.flags.add(f"anchor-unit:{unit.render(g.variables)}")
    return c


def anchor_unit(c) -> str | None:
    """The recorded anchor unit of an explicit generator, as text."""
    for f in c.flags:
        if f.startswith("anchor-unit:"):
            return f.split(":", 1)[1]
    return None
