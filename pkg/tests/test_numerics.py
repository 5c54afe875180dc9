import random
from fractions import Fraction

import pytest

from congames.numerics import (
    SQRT2,
    SQRT3,
    MixedRadicalError,
    QuadExt,
    format_rational,
    is_square_free,
    qeval,
    qsign,
    rational,
)
from helpers import interval_sign


def qx(a, b, d):
    return QuadExt(Fraction(a), Fraction(b), d)


def test_rational_parse_and_format():
    assert rational("10/211") == Fraction(10, 211)
    assert rational("5") == Fraction(5)
    assert rational(Fraction(3, 4)) == Fraction(3, 4)
    assert format_rational(Fraction(10, 211)) == "10/211"
    assert format_rational(Fraction(5)) == "5"


def test_canonical_form_equal_values_compare_equal():
    assert Fraction(2, 4) == Fraction(1, 2)
    assert qx(Fraction(2, 4), Fraction(6, 4), 3) == qx(Fraction(1, 2), Fraction(3, 2), 3)


def test_qsign_zero():
    assert qsign(qx(0, 0, 3)) == 0


def test_qsign_opposite_parts():
    # 3 - 2*sqrt(3) is negative because 9 < 12
    assert qsign(qx(3, -2, 3)) == -1
    assert qsign(qx(4, -2, 3)) == 1  # 16 > 12


def test_qsign_square_of_nonzero_is_positive():
    x = (1 + SQRT3) * (1 + SQRT3)
    assert x == qx(4, 2, 3)
    assert qsign(x) == 1


def test_qsign_rational_inputs():
    assert qsign(Fraction(-3, 7)) == -1
    assert qsign(0) == 0
    assert qsign(Fraction(2)) == 1


def test_qsign_agrees_with_interval_evaluation():
    rng = random.Random(20240311)
    ds = [2, 3, 5, 6, 7, 10]
    for _ in range(10**4):
        a = Fraction(rng.randint(-999, 999), rng.randint(1, 99))
        b = Fraction(rng.randint(-999, 999), rng.randint(1, 99))
        x = QuadExt(a, b, rng.choice(ds))
        assert qsign(x) == interval_sign(x)


def test_qeval_known_constants():
    assert qeval(1 + SQRT2, 30).startswith("2.41421356")
    assert qeval(1 + SQRT3 / 3, 30).startswith("1.57735026")
    assert qeval(Fraction(17, 3), 30).startswith("5.66666666")


def test_qeval_negative_and_zero():
    assert qeval(-(1 + SQRT2), 30).startswith("-2.41421356")
    assert qeval(qx(0, 0, 2), 16).startswith("0.0000")


def test_qeval_precision_floor():
    with pytest.raises(ValueError):
        qeval(SQRT2, 7)


def test_qeval_matches_high_precision_reference():
    from math import isqrt

    scale = 1 << 200
    root5_low = Fraction(isqrt(5 * scale * scale), scale)
    rng = random.Random(7)
    for _ in range(50):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        x = QuadExt(a, b, 5)
        approx = Fraction(qeval(x, 64))
        reference = a + b * root5_low  # within 2^-199 of the true value
        assert abs(approx - reference) < Fraction(1, 2**63)


def test_field_axioms_exact():
    rng = random.Random(99)
    for _ in range(400):
        d = rng.choice([2, 3, 7])
        vals = [
            QuadExt(
                Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
                Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
                d,
            )
            for _ in range(3)
        ]
        x, y, z = vals
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x
        assert x + (-x) == qx(0, 0, d)
        if not x.is_zero():
            assert x * x.inverse() == qx(1, 0, d)


def test_division_and_powers():
    x = 1 + SQRT3
    assert x / x == qx(1, 0, 3)
    assert x**2 == qx(4, 2, 3)
    assert x**-1 == x.inverse()
    assert x**0 == qx(1, 0, 3)
    assert (x**-2) * (x**2) == qx(1, 0, 3)
    with pytest.raises(ZeroDivisionError):
        qx(0, 0, 3).inverse()


def test_rational_embeds_and_mixed_radicals_error():
    r = QuadExt(Fraction(1, 2), Fraction(0), 2)
    assert (r + SQRT3).d == 3  # rational side adopts the radical
    with pytest.raises(MixedRadicalError):
        _ = SQRT2 + SQRT3
    with pytest.raises(MixedRadicalError):
        _ = SQRT2 * SQRT3
    with pytest.raises(MixedRadicalError):
        _ = SQRT2 < SQRT3


def test_scalar_interop_with_int_and_fraction():
    assert 1 + SQRT3 == qx(1, 1, 3)
    assert Fraction(1, 2) * SQRT3 == qx(0, Fraction(1, 2), 3)
    assert 2 / (1 + SQRT3) == qx(-1, 1, 3)  # 2/(1+sqrt3) = sqrt3 - 1
    assert SQRT3 - Fraction(1, 2) == qx(Fraction(-1, 2), 1, 3)


def test_d_validation():
    assert is_square_free(6) and not is_square_free(12)
    with pytest.raises(ValueError):
        qx(1, 1, 12)
    with pytest.raises(ValueError):
        qx(1, 1, 0)
    folded = qx(2, 5, 1)  # d = 1 collapses to the rational 7
    assert folded.b == 0 and folded.a == 7


def test_comparisons_via_exact_sign():
    assert SQRT3 > Fraction(3, 2)
    assert SQRT3 < Fraction(7, 4)
    assert sorted([1 + SQRT3, qx(0, 0, 3), 3 - 2 * SQRT3]) == [
        3 - 2 * SQRT3,
        qx(0, 0, 3),
        1 + SQRT3,
    ]


def test_str_rendering():
    assert str(qx(1, Fraction(1, 3), 3)) == "1+1/3√3"
    assert str(qx(0, 1, 3)) == "√3"
    assert str(qx(0, -1, 3)) == "-√3"
    assert str(qx(Fraction(5, 3), 0, 3)) == "5/3"
    assert str(qx(1, Fraction(-1, 2), 2)) == "1-1/2√2"


def test_immutability_and_hash():
    x = 1 + SQRT3
    with pytest.raises(Exception):
        x.a = Fraction(2)
    assert hash(qx(3, 0, 2)) == hash(Fraction(3))
    assert len({qx(1, 1, 3), qx(1, 1, 3), qx(1, 1, 2)}) == 2
