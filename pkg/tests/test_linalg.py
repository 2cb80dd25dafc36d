from fractions import Fraction

from hypothesis import given, strategies as st

from gkm.linalg import determinant, nullspace, rank, solve_rational

square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


def test_unique_solution():
    rep = solve_rational([[2, 1], [1, 3]], [3, 5])
    assert rep.kind == "unique"
    assert rep.solution == (Fraction(4, 5), Fraction(7, 5))


def test_inconsistent():
    rep = solve_rational([[1, 1], [2, 2]], [1, 3])
    assert rep.kind == "none" and rep.witness is not None


def test_underdetermined_kernel():
    rep = solve_rational([[1, 1, 0]], [2])
    assert rep.kind == "underdetermined"
    assert rep.free == (1, 2)
    for v in rep.kernel:
        assert v[0] + v[1] == 0


@given(square, st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solution_satisfies_system(m, b):
    b = b[: len(m)]
    rep = solve_rational(m, b)
    if rep.kind != "none":
        for row, rhs in zip(m, b):
            assert sum(Fraction(a) * x for a, x in zip(row, rep.solution)) == rhs
        for v in rep.kernel:
            for row in m:
                assert sum(a * x for a, x in zip(row, v)) == 0
    assert (rep.kind == "unique") == (determinant(m) != 0)


@given(square)
def test_rank_nullity(m):
    n = len(m[0])
    assert rank(m) + len(nullspace(m, n)) == n
