from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from peakqsym.linalg import (
    SingularSystemError,
    independent,
    rank,
    rank_exact,
    rank_mod_p,
    solve_exact,
    solve_unique,
)

small_matrix = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=n, max_size=n),
        min_size=1,
        max_size=5,
    )
)


def test_solve_unique_known_system():
    matrix = [[2, 1], [1, -1]]
    rhs = [Fraction(5), Fraction(1)]
    assert solve_unique(matrix, rhs) == [Fraction(2), Fraction(1)]


def test_solve_unique_rational_result():
    assert solve_unique([[2]], [Fraction(1)]) == [Fraction(1, 2)]


def test_solve_unique_singular_raises():
    with pytest.raises(SingularSystemError):
        solve_unique([[1, 2], [2, 4]], [Fraction(1), Fraction(2)])


def test_solve_exact_overdetermined_consistent():
    matrix = [[1, 0], [0, 1], [1, 1]]
    rhs = [Fraction(3), Fraction(4), Fraction(7)]
    assert solve_exact(matrix, rhs) == [Fraction(3), Fraction(4)]


def test_solve_exact_inconsistent_returns_none():
    matrix = [[1, 0], [0, 1], [1, 1]]
    rhs = [Fraction(3), Fraction(4), Fraction(8)]
    assert solve_exact(matrix, rhs) is None


def test_solve_exact_underdetermined_raises():
    with pytest.raises(SingularSystemError):
        solve_exact([[1, 1]], [Fraction(2)])


def test_rank_known_values():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0


@given(small_matrix)
def test_modular_rank_never_exceeds_exact(matrix):
    exact = rank_exact(matrix)
    assert rank_mod_p(matrix, 2147483629) <= exact
    assert rank(matrix) == exact


def test_independent():
    assert independent([[1, 0, 0], [0, 1, 0]])
    assert not independent([[1, 2], [2, 4]])
    assert independent([])
