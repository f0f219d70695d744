from fractions import Fraction

import pytest

from gallai_fans.bounds import (
    BoundRow,
    bound_table,
    gr_f2,
    gr_fn_bounds,
    gr_prime_f2,
    ramsey_fn_bounds,
)
from gallai_fans.errors import ParamError


def f2_exact(k):
    # rational evaluation of the closed forms, independent of the integer code
    if k == 2:
        return Fraction(9)
    if k % 2 == 0:
        return Fraction(83, 2) * Fraction(5) ** ((k - 4) // 2) + Fraction(1, 2)
    return 4 * Fraction(5) ** ((k - 1) // 2) + 1


def f3_upper_odd(k):
    return 33 * Fraction(5) ** ((k - 3) // 2) + Fraction(3, 4) * Fraction(5) ** ((k - 5) // 2) - Fraction(3, 4)


def test_f2_rows():
    assert [r.exact for r in bound_table("f2", 6)] == [9, 21, 42, 101, 208]
    for k in range(2, 11):
        v = f2_exact(k)
        assert v.denominator == 1 and gr_f2(k) == v


def test_f2_prime():
    for kp in range(0, 11):
        if kp % 2 == 0:
            assert gr_prime_f2(kp) == 2 * 5 ** (kp // 2) + 1
        else:
            assert gr_prime_f2(kp) == 4 * 5 ** ((kp - 1) // 2) + 1
    assert gr_prime_f2(0) == 3


def test_f3_rows():
    rows = {r.k: r for r in bound_table("f3", 9)}
    assert (rows[7].lower, rows[7].upper) == (825, 828)
    assert rows[4].exact == 69 and rows[5].exact == 165 and rows[3].exact == 33
    for k in (7, 9):
        assert rows[k].upper == f3_upper_odd(k)


def test_fn_rows():
    assert gr_fn_bounds(4, 3) == (41, 81)
    for n in (2, 3, 4, 5):
        for k in range(2, 9):
            lo, hi = gr_fn_bounds(n, k)
            if k % 2 == 0:
                p = Fraction(5) ** ((k - 2) // 2)
                assert lo == 4 * n * p + 1
                assert hi == int(10 * n * p - Fraction(5, 2) * n + 1)
            else:
                p = Fraction(5) ** ((k - 1) // 2)
                assert lo == 2 * n * p + 1
                assert hi == Fraction(9, 2) * n * p - Fraction(5, 2) * n + 1


def test_ramsey_rows():
    assert ramsey_fn_bounds(2) == (9, 9)
    assert ramsey_fn_bounds(3) == (13, 13)
    assert ramsey_fn_bounds(4) == (17, 24)
    assert [r.k for r in bound_table("ramsey", 5)] == [1, 2, 3, 4, 5]


def test_table_errors():
    for bad in (1, 21):
        with pytest.raises(ParamError):
            bound_table("f2", bad)
    with pytest.raises(ParamError):
        bound_table("fn", 5)
    with pytest.raises(ParamError):
        bound_table("f7", 5)
    with pytest.raises(ValueError):
        BoundRow(2, 10, 9)


def test_rows_serialize():
    row = bound_table("f3", 7)[-1]
    assert row.to_json() == {"k": 7, "lower": 825, "upper": 828, "exact": None}
