"""Acceptance criteria 1-10: one timed pass/fail line each.

Under pytest the lines are collected into the terminal summary; run this file
directly (``python3 tests/test_acceptance.py``) to print them alone.
"""
from __future__ import annotations

import random
import sys
import time
from math import factorial
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from helpers import (  # noqa: E402
    flatten,
    generator_span,
    in_span,
    member_space,
    random_explicit_graph,
    random_member,
)

from gkm.examples import (  # noqa: E402
    AFFINE_A1_CARTAN,
    TWISTED_CARTAN,
    divided_power_coefficients,
    g2_graph,
    stability,
    suite_g2,
    suite_omega_su2,
    suite_twisted,
)
from gkm.graph import build_graph, weight_label  # noqa: E402
from gkm.linalg import rank  # noqa: E402
from gkm.poly import Laurent  # noqa: E402
from gkm.qcomb import check_symmetry, check_omega_closed, omega_su2_graph  # noqa: E402
from gkm.ring import (  # noqa: E402
    canonical_generators_H,
    expand_in_basis,
    filtration_leading_check,
    is_member,
    lift_generators_to_K,
    resum,
)

try:
    from conftest import ACCEPTANCE
except ImportError:  # running as a script
    ACCEPTANCE = {}

LIMITS = {1: 5, 2: 10, 3: 30, 4: 30, 5: 30, 6: 60, 7: 10, 8: 60, 9: 60, 10: 30}


def criterion(n):
    """Time the body, record a summary line, then fail on a failed check or a slow run."""

    def wrap(body):
        def test():
            t0 = time.perf_counter()
            try:
                detail = body()
                err = None
            except AssertionError as exc:
                detail, err = f"{exc}", exc
            dt = time.perf_counter() - t0
            slow = dt >= LIMITS[n]
            ok = err is None and not slow
            note = f" exceeds {LIMITS[n]} s" if slow else ""
            ACCEPTANCE[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({dt:.2f} s{note}) {detail}"
            if err is not None:
                raise err
            assert not slow, ACCEPTANCE[n]

        test.__name__ = f"test_criterion_{n}"
        test.__doc__ = body.__doc__
        return test

    return wrap


def _suite_ok(res):
    assert res.ok, f"{res.name}: failed {res.failures()}"


@criterion(1)
def test_criterion_1():
    """G2/P ordinary cohomology relations."""
    res = suite_g2("H")
    _suite_ok(res)
    rels = res.lines[-5:]
    assert rels == ["x^2=y", "x^3=2z", "x^4=2s", "x^5=2t", "x^6=0"], rels
    return ", ".join(rels)


@criterion(2)
def test_criterion_2():
    """G2/P equivariant H relations under the searched basis."""
    res = suite_g2("H")
    _suite_ok(res)
    g = g2_graph()
    (a, b), *rest = res.data["basis"]
    return f"basis a={weight_label(g, a)} b={weight_label(g, b)}, {1 + len(rest)} match(es), 4 relations hold"


@criterion(3)
def test_criterion_3():
    """G2/P K-theory: lifted generators, ordinary and equivariant relations."""
    res = suite_g2("K")
    _suite_ok(res)
    rels = res.lines[-5:]
    assert rels == ["x^2=y", "x^3=2z-s", "x^4=2s-t", "x^5=2t", "x^6=0"], rels
    g = g2_graph()
    (a, b), *_ = res.data["basis"]
    return ", ".join(rels) + f"; equivariant relations hold with a={weight_label(g, a)} b={weight_label(g, b)}"


@criterion(4)
def test_criterion_4():
    """Divided powers on the affine A1 graph at L=8."""
    g = omega_su2_graph(8)
    gens = canonical_generators_H(g, 6, require_integral=True)
    assert [g.length(x.anchor) for x in gens] == list(range(7))
    x1 = gens[1]
    p = x1
    for n in range(2, 6):
        p = p * x1
        exp = expand_in_basis(g, p, gens)
        assert all(exp.stable.values()), f"g1^{n} has provisional coefficients"
    got = [c for n, c, only in divided_power_coefficients(g, gens, 5) if only]
    want = [factorial(n) for n in range(2, 6)]
    assert got == want, f"coefficients {got}, expected {want}"
    return "g1^n = n! g_n for n=2..5: " + " ".join(map(str, got))


@criterion(5)
def test_criterion_5():
    """Explicit K generators are members; lifted H generators are not."""
    res = suite_omega_su2("K", 12)
    _suite_ok(res)
    v, s, t = res.data["literal_failures"][0]
    return f"x_i members for |i|<=3; translated x_{v} fails on edge ({s},{t}); searched lift fails too"


@criterion(6)
def test_criterion_6():
    """Twisted affine A1: coefficients n! 2^floor(n/2)."""
    res = suite_twisted(8, 4)
    _suite_ok(res)
    at = res.data["attempts"]
    return f"parabolic {{2}}: {at[2]} (expected [4, 12, 96]); parabolic {{1}}: {at[1]}"


@criterion(7)
def test_criterion_7():
    """Symmetry sweep, both paths, closedness and the boundary identity."""
    sym = check_symmetry(6, 4)
    assert sym.ok, sym.failures[:3]
    squares = 0
    for l in range(4):
        rep = check_omega_closed(6, 6, l)
        assert rep.ok, rep.failures[:3]
        squares += rep.squares_checked
    return f"{sym.pairs_checked} symmetric pairs, {squares} closed squares, boundary sums vanish"


@criterion(8)
def test_criterion_8():
    """Oracle member spaces equal generator spans on random graphs."""
    rng = random.Random(20240608)
    dims = 0
    for i in range(20):
        g = random_explicit_graph(rng)
        gens = canonical_generators_H(g)
        for d in range(4):
            oracle = member_space(g, d)
            span = generator_span(g, gens, d)
            r = rank(span) if span else 0
            assert r == len(oracle), f"graph {i} degree {d}: span rank {r}, oracle dim {len(oracle)}"
            assert all(in_span(vec, span) for vec in oracle), f"graph {i} degree {d}: oracle member outside span"
            dims += r
            c, coeffs = random_member(g, gens, rng, d)
            if c is None:
                continue
            exp = expand_in_basis(g, c, gens)
            assert exp.nonzero() == {v: k for v, k in coeffs.items() if not k.is_zero()}
            assert flatten(g, resum(g, exp, gens, "H"), d) == flatten(g, c, d)
    return f"20 graphs, degrees 0..3, total member dimension {dims}, round-trips exact"


@criterion(9)
def test_criterion_9():
    """Generators at L and L+2 agree on the overlap."""
    builds = {
        "affine A1": lambda L: build_graph(AFFINE_A1_CARTAN, [2], L),
        "twisted A1": lambda L: build_graph(TWISTED_CARTAN, [2], L),
    }
    for name, build in builds.items():
        for L in (4, 6):
            bad = stability(build, L)
            assert not bad, f"{name} L={L}: mismatch {bad[:3]}"
    return "affine and twisted A1 stable at L=4, 6"


def _random_laurent(rng, rank_):
    return Laurent(rank_, {tuple(rng.randint(-1, 1) for _ in range(rank_)): rng.randint(-3, 3) for _ in range(3)})


@criterion(10)
def test_criterion_10():
    """Leading values of random members lie in the Euler ideal."""
    rng = random.Random(10)
    g2 = g2_graph()
    g2_H = canonical_generators_H(g2, require_integral=True)
    g2_K = lift_generators_to_K(g2, g2_H)
    aff = build_graph(AFFINE_A1_CARTAN, [2], 5)
    tw = build_graph(TWISTED_CARTAN, [2], 6)
    cases = {
        "G2 H": (g2, g2_H, "H"),
        "G2 K": (g2, g2_K, "K"),
        "affine A1 H": (aff, canonical_generators_H(aff), "H"),
        "twisted A1 H": (tw, canonical_generators_H(tw), "H"),
    }
    for name, (g, gens, theory) in cases.items():
        for _ in range(50):
            if theory == "H":
                top = max(g.length(x.anchor) for x in gens)
                c, _ = random_member(g, gens, rng, rng.randint(0, top + 1))
            else:
                c = None
                for x in gens:
                    if rng.random() < 0.6:
                        term = x.scale(_random_laurent(rng, g.rank))
                        c = term if c is None else c + term
                c = c if c is not None else gens[-1]
            assert is_member(g, c)[0], f"{name}: random class is not a member"
            rep = filtration_leading_check(g, c)
            assert rep.ok, f"{name}: leading values outside the Euler ideal at {rep.failures}"
    return "50 random members on each of G2 H, G2 K, affine A1 H, twisted A1 H"


if __name__ == "__main__":
    failed = 0
    for n in sorted(LIMITS):
        try:
            globals()[f"test_criterion_{n}"]()
        except AssertionError:
            failed += 1
        print(ACCEPTANCE[n])
    sys.exit(1 if failed else 0)
