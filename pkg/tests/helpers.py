"""Independent oracles and random inputs shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from gkm.graph import GkmGraph, build_graph, build_graph_explicit, to_json_dict
from gkm.linalg import nullspace, rank
from gkm.poly import Poly
from gkm.ring import GkmClass, monomials

# Rank-1 and rank-2 Cartan data whose truncations stay small.
FAMILIES = [
    ("2", [], None),
    ("2,-1;-1,2", [], None),
    ("2,-1;-1,2", [1], None),
    ("2,0;0,2", [], None),
    ("2,-1;-2,2", [], None),
    ("2,-1;-2,2", [2], None),
    ("2,-1;-3,2", [1], None),
    ("2,-1;-3,2", [2], None),
    ("2,-2;-2,2", [], 3),
    ("2,-2;-2,2", [2], 7),
    ("2,-1;-4,2", [1], 7),
    ("2,-1;-4,2", [], 3),
    ("2,-3;-3,2", [1], 5),
]


def random_unimodular(rng: random.Random, n: int, steps: int = 4):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 1:
        return [[rng.choice((1, -1))]]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice((-2, -1, 1, 2))
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        m[0], m[1] = m[1], m[0]
    return m


def random_explicit_graph(rng: random.Random, max_vertices: int = 8) -> GkmGraph:
    """A real family, truncated to a random length ideal, moved by GL_n(Z), relabelled."""
    while True:
        cartan, par, L = rng.choice(FAMILIES)
        g = build_graph(cartan, par, L)
        top = max(v.length for v in g.vertices)
        allowed = [c for c in range(1, top + 1) if sum(v.length <= c for v in g.vertices) <= max_vertices]
        if not allowed:
            continue
        # favour the largest admissible ideal
        cut = max(allowed) if rng.random() < 0.6 else rng.choice(allowed)
        d = to_json_dict(g)
        keep = {v["id"] for v in d["vertices"] if v["length"] <= cut}
        m = random_unimodular(rng, g.rank)
        ids = sorted(keep)
        names = dict(zip(ids, rng.sample([f"v{i}" for i in range(len(ids))], len(ids))))
        desc = {
            "rank": g.rank,
            "truncation": cut if (cut < top or g.truncation is not None) else None,
            "vertices": [{"id": names[v["id"]], "length": v["length"]} for v in d["vertices"] if v["id"] in keep],
            "edges": [
                {
                    "source": names[e["source"]],
                    "target": names[e["target"]],
                    "weight": [sum(r[k] * e["weight"][k] for k in range(g.rank)) for r in m],
                }
                for e in d["edges"]
                if e["source"] in keep
            ],
        }
        rng.shuffle(desc["vertices"])
        return build_graph_explicit(desc)


def _divisibility_row(w, monos, rank_):
    """One linear condition on the coefficients of a degree-d form h: ``w | h``.

    Rank 1: h(0) = 0. Rank 2: h vanishes at the point (w_2, -w_1) of the line ``w = 0``.
    """
    if rank_ == 1:
        return [1 if sum(m) == 0 else 0 for m in monos]
    pt = (w[1], -w[0])
    return [pt[0] ** m[0] * pt[1] ** m[1] for m in monos]


def member_space(g: GkmGraph, d: int) -> list[tuple[Fraction, ...]]:
    """Basis of degree-``d`` homogeneous members (values concatenated by ``g.ids()``)."""
    if g.rank > 2:
        raise ValueError("the oracle handles rank <= 2")
    monos = monomials(g.rank, d)
    ids = g.ids()
    pos = {v: i for i, v in enumerate(ids)}
    nm = len(monos)
    rows = []
    for e in g.edges:
        r = _divisibility_row(e.weight, monos, g.rank)
        row = [0] * (len(ids) * nm)
        for k, c in enumerate(r):
            row[pos[e.source] * nm + k] += c
            row[pos[e.target] * nm + k] -= c
        rows.append(row)
    if not rows:
        rows = [[0] * (len(ids) * nm)]
    return nullspace(rows, len(ids) * nm)


def flatten(g: GkmGraph, c: GkmClass, d: int) -> tuple:
    monos = monomials(g.rank, d)
    out = []
    for v in g.ids():
        x = c[v]
        if not x.is_zero() and x.homogeneous_degree() != d:
            raise ValueError("class is not homogeneous of degree d")
        out.extend(x.terms.get(m, 0) for m in monos)
    return tuple(out)


def generator_span(g: GkmGraph, gens, d: int) -> list[tuple]:
    vecs = []
    for x in gens:
        k = d - g.length(x.anchor)
        if k < 0:
            continue
        for m in monomials(g.rank, k):
            vecs.append(flatten(g, x.scale(Poly.monomial(m)), d))
    return vecs


def in_span(vec, basis) -> bool:
    return rank(list(basis) + [vec]) == rank(basis) if basis else not any(vec)


def random_poly(rng: random.Random, rank_: int, d: int, lo: int = -3, hi: int = 3) -> Poly:
    return Poly(rank_, {m: rng.randint(lo, hi) for m in monomials(rank_, d)})


def random_member(g: GkmGraph, gens, rng: random.Random, d: int):
    """``sum k_v x_v`` with random homogeneous integer ``k_v`` of degree ``d - |v|``."""
    coeffs = {}
    total = None
    for x in gens:
        k = d - g.length(x.anchor)
        if k < 0:
            continue
        kv = random_poly(rng, g.rank, k)
        coeffs[x.anchor] = kv
        term = x.scale(kv)
        total = term if total is None else total + term
    return total, coeffs
