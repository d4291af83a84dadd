from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from wzproof.linsolve import linsolve


def F(*xs):
    return [Fraction(v) for v in xs]


def test_identity():
    assert linsolve([F(1, 0), F(0, 1)], F(3, -2)) == F(3, -2)


def test_free_variable_zeroed():
    assert linsolve([F(1, 1)], F(5)) == F(5, 0)


def test_inconsistent():
    assert linsolve([F(1), F(1)], F(1, 2)) is None


def test_fractional_entries():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(-2, 5), Fraction(7)]]
    sol = linsolve(m, [Fraction(1), Fraction(0)])
    assert [sum(a * v for a, v in zip(row, sol)) for row in m] == [1, 0]


def test_empty_system_of_zero_rows():
    assert linsolve([F(0, 0)], F(0)) == F(0, 0)
    assert linsolve([F(0, 0)], F(1)) is None


def test_explicit_column_count():
    assert linsolve([], [], ncols=3) == F(0, 0, 0)


entries = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_consistent_systems_are_solved(rows, cols, data):
    m = [[data.draw(entries) for _ in range(cols)] for _ in range(rows)]
    hidden = [data.draw(entries) for _ in range(cols)]
    rhs = [sum((a * v for a, v in zip(row, hidden)), Fraction(0)) for row in m]
    sol = linsolve(m, rhs)
    assert sol is not None
    assert [sum((a * v for a, v in zip(row, sol)), Fraction(0)) for row in m] == rhs
