from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latforge.errors import InputError
from latforge.rational import (
    compare_power_sums,
    format_rational,
    iroot,
    parse_rational,
    root_ceil,
    root_interval,
)


def test_parse_and_format_round_trip():
    assert parse_rational("179/38000") == Fraction(179, 38000)
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("13") == Fraction(13)
    assert format_rational(Fraction(179, 38000)) == "179/38000"
    assert format_rational(Fraction(5)) == "5"
    assert format_rational(Fraction(-6, 8)) == "-3/4"


@pytest.mark.parametrize("bad", ["", "1/0", "a", "1.5", "1/2/3", "2 /3"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(InputError):
        parse_rational(bad)


@given(st.fractions())
def test_format_parse_identity(x):
    assert parse_rational(format_rational(x)) == x


@given(st.integers(min_value=0, max_value=10**24), st.integers(min_value=1, max_value=7))
def test_iroot_brackets(n, q):
    r = iroot(n, q)
    assert r**q <= n < (r + 1) ** q


@given(
    st.fractions(min_value=0, max_value=10**6),
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=4, max_value=64),
)
def test_root_interval_brackets(x, q, bits):
    lo, hi = root_interval(x, q, bits)
    assert lo**q <= x <= hi**q
    assert hi - lo <= Fraction(1, 2**bits)


def test_root_ceil_exact_on_perfect_powers():
    assert root_ceil(Fraction(9, 4), 2) == Fraction(3, 2)
    assert root_ceil(Fraction(27), 3) == 3


def test_compare_power_sums_exact_when_divisible():
    # q | s: pure rational arithmetic
    assert compare_power_sums([Fraction(4), Fraction(9)], [Fraction(16)], 2, 2) == -1
    assert compare_power_sums([Fraction(4)], [Fraction(4)], 2, 4) == 0


def test_compare_power_sums_interval_route():
    # sqrt(2) + sqrt(3) vs sqrt(10): 3.146 < 3.162
    assert compare_power_sums([Fraction(2), Fraction(3)], [Fraction(10)], 2, 1) == -1
    assert compare_power_sums([Fraction(10)], [Fraction(2), Fraction(3)], 2, 1) == 1


def test_compare_power_sums_structural_equality():
    assert compare_power_sums([Fraction(2), Fraction(3)], [Fraction(3), Fraction(2)], 2, 1) == 0


def test_compare_power_sums_unresolvable_tie_reports_none():
    # sqrt(4) + sqrt(9) = 5 = sqrt(25): equal but structurally different
    assert (
        compare_power_sums([Fraction(4), Fraction(9)], [Fraction(25)], 2, 1, max_bits=256)
        is None
    )
