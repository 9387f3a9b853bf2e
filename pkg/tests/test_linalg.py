import itertools

from hypothesis import given, settings, strategies as st

from cglforge.linalg import solve_gf2, solve_integer, solve_rational

small = st.integers(-3, 3)


def matvec(a, x):
    return [sum(r * v for r, v in zip(row, x)) for row in a]


def test_rational_unique_and_underdetermined():
    sol, unique = solve_rational([[2, 0], [0, 3]], [1, 1])
    assert unique and [str(x) for x in sol] == ["1/2", "1/3"]
    sol, unique = solve_rational([[1, 1]], [2])
    assert not unique and sum(sol) == 2
    assert solve_rational([[1], [1]], [0, 1]) == (None, False)


@settings(max_examples=80, derandomize=True, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_integer_solution_when_one_exists(a, x):
    b = matvec(a, x)
    got = solve_integer(a, b)
    assert got is not None and matvec(a, got) == b


def test_integer_detects_parity_obstruction():
    assert solve_integer([[2, 4]], [1]) is None


@settings(max_examples=80, derandomize=True, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_gf2_against_brute_force(a, b):
    b = b[:len(a)]
    solvable = any(all(sum(r * v for r, v in zip(row, x)) % 2 == bi for row, bi in zip(a, b))
                   for x in itertools.product((0, 1), repeat=3))
    got = solve_gf2(a, b)
    assert (got is not None) == solvable
    if got is not None:
        assert [v % 2 for v in matvec(a, got)] == b
