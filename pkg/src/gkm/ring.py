"""Classes on a GKM graph: the subring of the product of point rings.

A class is a total map vertex -> point-ring element. Membership is the
edge divisibility test; canonical H generators are built level by level
by solving for the unique homogeneous lift.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .factor import NotSplit, factor_into_linear_forms
from .graph import Edge, GkmGraph
from .lattice import Weight
from .linalg import solve_rational
from .poly import (
    Laurent,
    Poly,
    divides_euler_K,
    divides_linear,
    euler_from_weight_K,
    exact_divide,
    linear_from_weight,
)

THEORIES = ("H", "K")


class LiftError(ValueError):
    """A generator lift or K lift is unavailable; ``witness`` locates it."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SpanError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _ring(theory: str):
    if theory == "H":
        return Poly
    if theory == "K":
        return Laurent
    raise ValueError(f"unknown theory {theory!r}")


@dataclass
class GkmClass:
    """A candidate element of E_T^*(X), given by its restrictions to fixed points.

    ``anchor`` names the vertex a generator belongs to; ``flags`` collects
    non-fatal findings such as ``"non-integral"``.
    """

    theory: str
    graph: GkmGraph
    values: dict
    anchor: str | None = None
    flags: set = field(default_factory=set)
    membership: str = "unchecked"

    def __post_init__(self):
        missing = [v for v in self.graph.ids() if v not in self.values]
        if missing:
            raise ValueError(f"class undefined at vertices {missing}")
        kind = _ring(self.theory)
        for vid, val in self.values.items():
            if not isinstance(val, kind) or val.rank != self.graph.rank:
                raise TypeError(f"value at {vid} is not a rank-{self.graph.rank} {kind.__name__}")

    def __getitem__(self, vid):
        return self.values[vid]

    def __mul__(self, other):
        return multiply(self, other)

    def __add__(self, other):
        _same(self, other)
        return GkmClass(self.theory, self.graph, {v: self.values[v] + other.values[v] for v in self.values})

    def __sub__(self, other):
        _same(self, other)
        return GkmClass(self.theory, self.graph, {v: self.values[v] - other.values[v] for v in self.values})

    def scale(self, r) -> "GkmClass":
        """Multiply by a scalar or by an element of the coefficient ring."""
        return GkmClass(self.theory, self.graph, {v: x * r for v, x in self.values.items()})

    def support(self) -> list[str]:
        return [v for v, x in self.values.items() if not x.is_zero()]

    def is_integral(self) -> bool:
        return all(x.is_integral() for x in self.values.values())

    def to_json(self) -> dict:
        return {"theory": self.theory, "values": {v: self.values[v].to_json() for v in self.graph.ids()}}

    @classmethod
    def from_json(cls, graph: GkmGraph, data: Mapping) -> "GkmClass":
        theory = data["theory"]
        kind = _ring(theory)
        vals = {v: kind.from_json(data["values"][v], graph.rank) for v in graph.ids()}
        return cls(theory, graph, vals)


def constant_class(g: GkmGraph, theory: str, c=1) -> GkmClass:
    kind = _ring(theory)
    return GkmClass(theory, g, {v: kind.const(c, g.rank) for v in g.ids()})


def scalar(g: GkmGraph, theory: str, element) -> GkmClass:
    """The image of a coefficient-ring element (same value at every vertex)."""
    return GkmClass(theory, g, {v: element for v in g.ids()})


def _same(c1: GkmClass, c2: GkmClass):
    if c1.theory != c2.theory:
        raise ValueError("theory mismatch")
    if c1.graph is not c2.graph and c1.graph != c2.graph:
        raise ValueError("classes live on different graphs")


# membership ---------------------------------------------------------------


def edge_divides(theory: str, weight: Weight, diff) -> bool:
    if theory == "H":
        return divides_linear(weight, diff)[0]
    return divides_euler_K(weight, diff)[0]


def is_member(g: GkmGraph, c: GkmClass) -> tuple[bool, list[tuple[Edge, object]]]:
    """Check every edge condition; returns ``(ok, [(edge, difference), ...])``."""
    if c.graph is not g and c.graph != g:
        raise ValueError("class belongs to a different graph")
    bad = []
    for e in g.edges:
        diff = c.values[e.source] - c.values[e.target]
        if not edge_divides(c.theory, e.weight, diff):
            bad.append((e, diff))
    c.membership = "passed" if not bad else "failed"
    return not bad, bad


def euler_class(g: GkmGraph, v: str, theory: str):
    """Product of the Euler classes of the downward edge weights at ``v``."""
    kind = _ring(theory)
    out = kind.one(g.rank)
    for e in g.down_edges(v):
        out = out * (linear_from_weight(e.weight) if theory == "H" else euler_from_weight_K(e.weight))
    return out


# canonical generators ---------------------------------------------------------------


def monomials(rank: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total ``degree``, descending lex order."""
    if rank == 1:
        return [(degree,)]
    out = []
    for k in range(degree, -1, -1):
        for rest in monomials(rank - 1, degree - k):
            out.append((k,) + rest)
    return out


class _Restrictor:
    """Scaled restriction of degree-``d`` forms to the hyperplane ``w = 0``.

    With ``j`` the first index where ``w_j != 0``, substitute
    ``w_j x_j -> -(sum_{i != j} w_i x_i)`` and scale by ``w_j^d``; the
    result is integral for integral input.
    """

    def __init__(self, w: Weight, degree: int):
        self.w = w
        self.d = degree
        n = len(w)
        self.j = next(i for i, c in enumerate(w) if c)
        rest = Poly(n, {tuple(int(k == i) for k in range(n)): -c for i, c in enumerate(w) if c and i != self.j})
        self._powers = [Poly.one(n)]
        for _ in range(degree):
            self._powers.append(self._powers[-1] * rest)
        self._cache: dict = {}

    def monomial(self, e) -> Poly:
        hit = self._cache.get(e)
        if hit is None:
            j = self.j
            k = e[j]
            base = e[:j] + (0,) + e[j + 1:]
            hit = self._powers[k].shift(base) * (self.w[j] ** (self.d - k))
            self._cache[e] = hit
        return hit

    def __call__(self, f: Poly) -> Poly:
        out = Poly.zero(len(self.w))
        for e, c in f.terms.items():
            out = out + self.monomial(e) * c
        return out


class _LiftSolver:
    """Shared linear systems: one per (vertex, degree)."""

    def __init__(self, g: GkmGraph):
        self.g = g
        self._restrictors: dict = {}

    def restrictor(self, w, d):
        key = (w, d)
        r = self._restrictors.get(key)
        if r is None:
            r = self._restrictors[key] = _Restrictor(w, d)
        return r

    def lift(self, w_id: str, degree: int, known: Mapping[str, Poly]) -> Poly:
        g = self.g
        n = g.rank
        monos = monomials(n, degree)
        rows, rhs = [], []
        for e in g.down_edges(w_id):
            r = self.restrictor(e.weight, degree)
            images = [r.monomial(m) for m in monos]
            target = r(known[e.target])
            keys = sorted(set().union(*(im.terms for im in images), target.terms))
            for k in keys:
                rows.append([im.terms.get(k, 0) for im in images])
                rhs.append(target.terms.get(k, 0))
        if not rows:
            raise LiftError(f"vertex {w_id} has no downward edges to constrain the lift", w_id)
        rep = solve_rational(rows, rhs)
        if rep.kind == "none":
            raise LiftError(f"no solution for the lift at vertex {w_id} in degree {degree}", w_id)
        if rep.kind == "underdetermined":
            raise LiftError(f"non-unique lift at vertex {w_id} in degree {degree}", w_id)
        return Poly(n, {m: c for m, c in zip(monos, rep.solution) if c})


def canonical_generators_H(
    g: GkmGraph,
    up_to_length: int | None = None,
    shuffle: random.Random | None = None,
    require_integral: bool = False,
) -> list[GkmClass]:
    """The unique homogeneous free generators ``x_v`` with triangular support.

    ``x_v`` vanishes on every other vertex of length ``<= |v|``, equals the
    Euler class at ``v``, and above ``v`` is lifted one length level at a
    time. Lifts are solved over Q; a non-integral lift is kept and flagged
    ``"non-integral"`` unless ``require_integral`` is set. ``shuffle``
    permutes vertices inside each length level (the result must not change).
    """
    if up_to_length is None:
        up_to_length = max(v.length for v in g.vertices)
    solver = _LiftSolver(g)
    levels: dict[int, list[str]] = {}
    for v in g.vertices:
        levels.setdefault(v.length, []).append(v.id)
    if shuffle is not None:
        for ids in levels.values():
            shuffle.shuffle(ids)
    gens = []
    for v in g.by_length():
        if v.length > up_to_length:
            break
        d = v.length
        vals = {}
        for lvl in sorted(levels):
            if lvl > d:
                break
            for w in levels[lvl]:
                vals[w] = Poly.zero(g.rank)
        vals[v.id] = euler_class(g, v.id, "H")
        for lvl in sorted(levels):
            if lvl <= d:
                continue
            for w in levels[lvl]:
                vals[w] = solver.lift(w, d, vals)
        cls = GkmClass("H", g, vals, anchor=v.id)
        if not cls.is_integral():
            if require_integral:
                bad = next(w for w, x in vals.items() if not x.is_integral())
                raise LiftError(f"non-integral lift for x_{v.id} at vertex {bad}", bad)
            cls.flags.add("non-integral")
        gens.append(cls)
    return gens


# expansion ---------------------------------------------------------------


@dataclass
class BasisExpansion:
    coefficients: dict
    stable: dict
    remainder: bool = False

    def nonzero(self) -> dict:
        return {v: c for v, c in self.coefficients.items() if not c.is_zero()}


def is_unit(theory: str, x) -> bool:
    if theory == "H":
        return x.homogeneous_degree() == 0 and x.constant_term() in (1, -1)
    return x.is_unit_monomial()


def check_triangular(g: GkmGraph, gens: Sequence[GkmClass]) -> list[str]:
    """Problems with the support/normalization conditions of a generator family."""
    problems = []
    for x in gens:
        v = x.anchor
        if v is None:
            problems.append("generator without an anchor vertex")
            continue
        lv = g.length(v)
        for w in g.ids():
            if w != v and g.length(w) <= lv and not x[w].is_zero():
                problems.append(f"x_{v} is nonzero at {w}")
        q = exact_divide(x[v], euler_class(g, v, x.theory)) if not x[v].is_zero() else None
        if q is None or not is_unit(x.theory, q):
            problems.append(f"x_{v}({v}) does not generate the Euler ideal")
    return problems


def expand_in_basis(g: GkmGraph, c: GkmClass, gens: Sequence[GkmClass]) -> BasisExpansion:
    """Coefficients ``k_v`` with ``c = sum k_v x_v``, found by increasing length.

    Stability on truncated graphs: in H a coefficient is stable when the
    truncation reaches the top degree of ``c`` (homogeneity then forces
    finite support); in K coefficients at length ``>= L - 1`` are
    provisional.
    """
    problems = check_triangular(g, gens)
    if problems:
        raise ValueError("generators violate the triangularity conditions: " + "; ".join(problems))
    kind = _ring(c.theory)
    by_anchor = {x.anchor: x for x in gens}
    coeffs: dict[str, object] = {}
    remainder = False
    for v in g.by_length():
        acc = c[v.id]
        for u, k in coeffs.items():
            if not k.is_zero():
                acc = acc - k * by_anchor[u][v.id]
        x = by_anchor.get(v.id)
        if x is None:
            if not acc.is_zero():
                remainder = True
            continue
        if acc.is_zero():
            coeffs[v.id] = kind.zero(g.rank)
            continue
        q = exact_divide(acc, x[v.id])
        if q is None:
            raise SpanError(f"class outside generator span at vertex {v.id}", v.id)
        coeffs[v.id] = q
    stable = {}
    L = g.truncation
    top = max((x.degree() for x in c.values.values() if c.theory == "H" and not x.is_zero()), default=0)
    for v in coeffs:
        lv = g.length(v)
        if L is None:
            stable[v] = True
        elif c.theory == "H":
            stable[v] = L >= top or lv < L - 1
        else:
            stable[v] = lv < L - 1
    return BasisExpansion(coeffs, stable, remainder)


def resum(g: GkmGraph, expansion: BasisExpansion, gens: Sequence[GkmClass], theory: str) -> GkmClass:
    by_anchor = {x.anchor: x for x in gens}
    out = constant_class(g, theory, 0)
    for v, k in expansion.coefficients.items():
        if not k.is_zero():
            out = out + by_anchor[v].scale(k)
    return out


def multiply(c1: GkmClass, c2: GkmClass) -> GkmClass:
    _same(c1, c2)
    return GkmClass(c1.theory, c1.graph, {v: c1.values[v] * c2.values[v] for v in c1.values})


# specialization ---------------------------------------------------------------


def specialize(theory: str, x):
    """Non-equivariant image of a point-ring element: variables -> 0 (H), characters -> 1 (K)."""
    if theory == "H":
        return x.constant_term()
    return x.coefficient_sum()


def specialize_class(c: GkmClass) -> dict:
    return {v: specialize(c.theory, x) for v, x in c.values.items()}


def specialize_expansion(exp: BasisExpansion, theory: str) -> dict:
    return {v: specialize(theory, k) for v, k in exp.coefficients.items()}


# K lift ---------------------------------------------------------------


def _divisor_splits(c: int, k: int):
    """Ways to pull positive multipliers ``m_j`` (product dividing ``c``) onto ``k`` arrows."""
    c = abs(int(c))
    if k == 0:
        yield ()
        return
    for m in range(1, c + 1):
        if c % m == 0:
            for rest in _divisor_splits(c // m, k - 1):
                yield (m,) + rest


def _bouquets(content, forms):
    """Candidate arrow bouquets for an H value ``content * prod(forms)``.

    Yields ``(scalar, arrows)`` with ``scalar * prod(arrows) == content * prod(forms)``.
    The literal reading (no multipliers, no sign flips) comes first.
    """
    k = len(forms)
    signs = list(product((1, -1), repeat=k))
    signs.sort(key=lambda p: (sum(1 for s in p if s < 0), [s < 0 for s in p]))
    splits = sorted(set(_divisor_splits(content, k)), key=lambda m: (sum(x > 1 for x in m), m))
    for m in splits:
        for sg in signs:
            scale = 1
            for a, b in zip(m, sg):
                scale *= a * b
            arrows = [tuple(a * b * x for x in w) for a, b, w in zip(m, sg, forms)]
            yield Fraction(content) / scale, arrows


def _k_value(scalar_, arrows, rank):
    val = Laurent.const(scalar_, rank)
    for w in arrows:
        val = val * euler_from_weight_K(w)
    return val


def lift_generators_to_K(g: GkmGraph, H_gens: Sequence[GkmClass], budget: int = 20000) -> list[GkmClass]:
    """Translate bouquet-style H generators into K classes.

    Each nonzero value is read as a bouquet ``c * prod(beta_j)`` and becomes
    ``c * prod(1 - e^{beta_j})``. An H value fixes the arrows only up to sign
    and up to moving integer factors of ``c`` onto them (``2(a+2b)`` may be
    the single arrow ``2a+4b``), so readings are searched depth-first,
    literal reading first, until every edge condition holds; at the anchor
    the stored edge weights are used. The lifted classes are then
    membership- and triangularity-checked.
    """
    out = []
    for x in H_gens:
        if x.theory != "H":
            raise ValueError("expected H generators")
        order = [v.id for v in g.by_length()]
        factored = {}
        for w in order:
            val = x[w]
            if val.is_zero():
                factored[w] = None
                continue
            try:
                factored[w] = factor_into_linear_forms(val)
            except NotSplit as exc:
                raise LiftError(f"value of x_{x.anchor} at {w} does not split into linear forms", w) from exc
        vals = _search_bouquets(g, x.anchor, order, factored, budget)
        k = GkmClass("K", g, vals, anchor=x.anchor)
        ok, bad = is_member(g, k)
        if not ok:
            e = bad[0][0]
            raise LiftError(f"lifted class x_{x.anchor} fails GKM conditions", (e.source, e.target))
        problems = check_triangular(g, [k])
        if problems:
            raise LiftError(f"lifted class x_{x.anchor} fails triangularity: {problems[0]}", x.anchor)
        out.append(k)
    return out


def _search_bouquets(g, anchor, order, factored, budget):
    rank = g.rank
    vals: dict = {}
    deepest = {"idx": -1, "edge": None}
    steps = 0

    def options(w):
        f = factored[w]
        if f is None:
            return [Laurent.zero(rank)]
        if w == anchor:
            return [euler_class(g, w, "K") * _anchor_sign(g, w, f)]
        content, forms = f
        return (_k_value(c, arrows, rank) for c, arrows in _bouquets(content, forms))

    def fits(w, val):
        for e in g.down_edges(w):
            if not divides_euler_K(e.weight, val - vals[e.target])[0]:
                return e
        return None

    def dfs(idx):
        nonlocal steps
        if idx == len(order):
            return True
        w = order[idx]
        for val in options(w):
            steps += 1
            if steps > budget:
                return False
            bad = fits(w, val)
            if bad is not None:
                if idx > deepest["idx"]:
                    deepest["idx"], deepest["edge"] = idx, (bad.source, bad.target)
                continue
            vals[w] = val
            if dfs(idx + 1):
                return True
            del vals[w]
        return False

    if not dfs(0):
        raise LiftError(f"lifted class x_{anchor} fails GKM conditions", deepest["edge"])
    return dict(vals)


def _anchor_sign(g, w, factored):
    """Sign relating the H value at the anchor to the product of its edge weights."""
    content, forms = factored
    prod_weights = Poly.one(g.rank)
    for e in g.down_edges(w):
        prod_weights = prod_weights * linear_from_weight(e.weight)
    val = Poly.const(content, g.rank)
    for f in forms:
        val = val * linear_from_weight(f)
    q = exact_divide(val, prod_weights)
    return q.constant_term()


# filtration ---------------------------------------------------------------


@dataclass
class FiltrationReport:
    checked: list[str]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def filtration_leading_check(g: GkmGraph, c: GkmClass) -> FiltrationReport:
    """At every support vertex with no support below it, the value lies in the Euler ideal."""
    support = set(c.support())
    checked, failures = [], []
    for v in support:
        if g.below(v) & support:
            continue
        checked.append(v)
        if exact_divide(c[v], euler_class(g, v, c.theory)) is None:
            failures.append(v)
    return FiltrationReport(sorted(checked), sorted(failures))
