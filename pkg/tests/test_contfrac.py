import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from denjoy.certified import CertifiedValue, circular_distance, format_rational, parse_rational
from denjoy.contfrac import (
    ContinuedFraction,
    convergents,
    denominators,
    evaluate,
    format_cf,
    frac_multiple,
    parse_cf,
    separation_lower_bound,
)
from denjoy.errors import DepthExhausted, ParseError

from conftest import decimal_sqrt, fold_value, frac_of

SILVER = parse_cf("[0; (2)]")  # sqrt 2 - 1
GOLDEN = parse_cf("[0; (1)]")  # 1/phi

periodic_cfs = st.builds(
    ContinuedFraction.periodic,
    st.lists(st.integers(1, 6), min_size=1, max_size=4),
    st.lists(st.integers(1, 6), max_size=3),
)


def recurrence_oracle(terms):
    # forward recurrence written out by hand, independent of the package cache
    out, (p0, q0), (p1, q1) = [], (1, 0), (0, 1)
    for a in terms:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


# --- parsing and normal form ---------------------------------------------

def test_parse_and_format_round_trip():
    cf = parse_cf("[0; 1, 2, (2, 3)]")
    assert cf.prefix == (1, 2) and cf.periodic_tail == (2, 3)
    assert format_cf(cf) == "[0; 1, 2, (2, 3)]"
    assert parse_cf(format_cf(cf)) == cf


def test_prefix_rolls_into_tail():
    assert parse_cf("[0; 3, (2, 3)]") == parse_cf("[0; (3, 2)]")
    assert parse_cf("[0; (2, 2)]").periodic_tail == (2,)


def test_stream_parse():
    cf = parse_cf("[0; 1, 2, 3]")
    assert not cf.is_quadratic and cf.available_terms == 3


@pytest.mark.parametrize("text", ["[1; (2)]", "0; (2)", "[0; (2", "[0; (0)]", "[0; a]", "[0; ()]"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_cf(text)


def test_rational_text_format():
    assert format_rational(Fraction(3)) == "3/1"
    assert parse_rational(" 2/6 ") == Fraction(1, 3)


# --- convergents -----------------------------------------------------------

def test_convergents_silver():
    assert convergents(SILVER, 4) == [Fraction(1, 2), Fraction(2, 5), Fraction(5, 12), Fraction(12, 29)]
    assert convergents(SILVER, 4) == recurrence_oracle([2, 2, 2, 2])


def test_convergents_golden():
    assert convergents(GOLDEN, 3) == [Fraction(1), Fraction(1, 2), Fraction(2, 3)]


def test_single_convergent():
    assert convergents(SILVER, 1) == [Fraction(1, 2)]


def test_convergents_stream_exhausted():
    with pytest.raises(DepthExhausted):
        convergents(ContinuedFraction.stream([1, 2]), 3)


@given(periodic_cfs, st.integers(2, 25))
def test_convergents_alternate_and_bracket(cf, k):
    value = fold_value(cf.prefix, cf.periodic_tail, 200)
    cs = convergents(cf, k + 1)
    qs = [c.denominator for c in cs]
    assert all(a < b for a, b in zip(qs[1:], qs[2:]))
    for i, c in enumerate(cs[:-1], start=1):
        # odd-index convergents sit above the value, even ones below
        assert (c > value) if i % 2 else (c < value)
        assert abs(value - c) < Fraction(1, qs[i - 1] * qs[i])


# --- evaluation --------------------------------------------------------------

def test_eval_silver():
    e = evaluate(SILVER, Fraction(1, 1000))
    assert e.radius <= Fraction(1, 1000)
    d = decimal_sqrt(2) - 1
    assert e.lo <= Fraction(d) <= e.hi


def test_eval_golden():
    e = evaluate(GOLDEN, Fraction(1, 100))
    assert e.contains(Fraction((decimal_sqrt(5) - 1) / 2))


def test_eval_coarse():
    e = evaluate(SILVER, Fraction(1))
    assert e.midpoint == Fraction(1, 2) and e.radius <= 1


def test_eval_stream_depth():
    with pytest.raises(DepthExhausted):
        evaluate(ContinuedFraction.stream([2, 2]), Fraction(1, 10 ** 6))


@given(periodic_cfs, st.integers(1, 80))
def test_eval_encloses(cf, bits):
    eps = Fraction(1, 2 ** bits)
    e = evaluate(cf, eps)
    assert e.radius <= eps and e.contains(fold_value(cf.prefix, cf.periodic_tail, 300))


# --- multiples --------------------------------------------------------------

def test_frac_multiple_zero():
    assert frac_multiple(SILVER, 0, Fraction(1, 10)) == CertifiedValue(0, 0)


def test_frac_multiple_two():
    e = frac_multiple(SILVER, 2, Fraction(1, 10 ** 4))
    assert e.radius <= Fraction(1, 10 ** 4)
    assert e.contains(Fraction(2 * (decimal_sqrt(2) - 1)))
    assert abs(float(e.midpoint) - 0.82843) < 1e-4


def test_frac_multiple_negative():
    e = frac_multiple(SILVER, -1, Fraction(1, 10 ** 4))
    assert e.contains(Fraction(1 - (decimal_sqrt(2) - 1)))
    assert abs(float(e.midpoint) - 0.58579) < 1e-4


def test_frac_multiple_radius_independent_of_n():
    eps = Fraction(1, 2 ** 40)
    for n in (1, 10 ** 3, 10 ** 9, -10 ** 12):
        e = frac_multiple(SILVER, n, eps)
        assert e.radius <= eps and 0 <= e.lo and e.hi < 1


@settings(max_examples=60)
@given(periodic_cfs, st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
def test_frac_multiple_additive(cf, m, n):
    eps = Fraction(1, 2 ** 50)
    a, b, c = (frac_multiple(cf, k, eps) for k in (m, n, m + n))
    assert circular_distance(a.midpoint + b.midpoint, c.midpoint) <= a.radius + b.radius + c.radius


def test_frac_multiple_matches_fold_oracle():
    value = fold_value((), (2,), 400)
    for n in (3, -7, 1000):
        assert frac_multiple(SILVER, n, Fraction(1, 2 ** 60)).contains(frac_of(n * value))


# --- separation --------------------------------------------------------------

def test_separation_examples():
    assert separation_lower_bound(SILVER, 2) == Fraction(1, 7)
    assert separation_lower_bound(GOLDEN, 1) == Fraction(1, 3)


def test_separation_at_denominator():
    # 12 is a denominator of [0; (2)]: the bound uses q = 12 and q' = 29
    assert 12 in list(_take(denominators(SILVER), 6))
    assert separation_lower_bound(SILVER, 12) == Fraction(1, 12 + 29)


def _take(it, n):
    for _, x in zip(range(n), it):
        yield x


@pytest.mark.parametrize("text", ["[0; (2)]", "[0; (1)]", "[0; (1, 2)]", "[0; 3, (1, 4)]"])
def test_separation_sound_brute_force(text):
    cf = parse_cf(text)
    value = fold_value(cf.prefix, cf.periodic_tail, 200)
    for N in (1, 2, 5, 13, 60, 200, 500):
        b = separation_lower_bound(cf, N)
        worst = min(min(frac_of(k * value), 1 - frac_of(k * value)) for k in range(1, N + 1))
        assert worst >= b
