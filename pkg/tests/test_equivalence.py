import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from denjoy.contfrac import ContinuedFraction, parse_cf
from denjoy.equivalence import (
    IntegerMatrix2,
    Verdict,
    gl2z_equivalent,
    gl2z_matrices,
    gl2z_matrix_search,
    mobius_apply,
    mobius_image,
    quadratic_value,
)
from denjoy.errors import UnsupportedInput
from denjoy.surd import QuadraticNumber, expand

from conftest import fold_value, frac_of

SILVER = parse_cf("[0; (2)]")
GOLDEN = parse_cf("[0; (1)]")

FAMILY = [
    parse_cf(t)
    for t in (
        "[0; (1)]",
        "[0; (2)]",
        "[0; (3)]",
        "[0; (1, 2)]",
        "[0; (1, 3)]",
        "[0; (2, 3)]",
        "[0; 1, (2)]",
        "[0; 2, (1)]",
        "[0; (2, 1)]",
        "[0; 4, (1, 1, 2)]",
    )
]


def test_matrix_determinant_checked():
    with pytest.raises(ValueError):
        IntegerMatrix2(1, 1, 1, 1)
    M = IntegerMatrix2(2, 1, 1, 1)
    assert M @ M.inverse() == IntegerMatrix2.identity()


# --- surd arithmetic -------------------------------------------------------

def test_surd_value_matches_fold():
    for cf in FAMILY:
        q = quadratic_value(cf)
        assert abs(Fraction(float(q)) - fold_value(cf.prefix, cf.periodic_tail, 200)) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 5, 7, 13, 19, 94])
def test_expand_sqrt_known(d):
    # sqrt(d) expansion checked against the fold oracle of its own output
    a0, prefix, period = expand(QuadraticNumber(0, 1, d))
    assert a0 == math.isqrt(d) and not prefix
    assert abs(float(fold_value(period, period, 400)) - (math.sqrt(d) - a0)) < 1e-12


def test_floor_of_negative_surd():
    x = QuadraticNumber(Fraction(1, 3), -1, 2)  # 1/3 - sqrt 2 = -1.08
    assert math.floor(x) == -2


# --- mobius action -------------------------------------------------------

def test_mobius_example_silver():
    assert mobius_apply(IntegerMatrix2(0, 1, 1, 1), SILVER) == parse_cf("[0; 1, (2)]")


def test_mobius_identity():
    for cf in FAMILY:
        assert mobius_apply(IntegerMatrix2.identity(), cf) == cf


def test_mobius_translation_golden():
    assert mobius_image(IntegerMatrix2(1, 1, 0, 1), GOLDEN) == (1, GOLDEN)


def test_mobius_rejects_stream():
    with pytest.raises(UnsupportedInput):
        mobius_apply(IntegerMatrix2.identity(), ContinuedFraction.stream([1, 2, 3]))


def test_mobius_preserves_tail_class():
    for cf, M in itertools.product(FAMILY[:5], gl2z_matrices(2)[:40]):
        image = mobius_apply(M, cf)
        assert image.canonical_tail() == cf.canonical_tail()


matrices5 = st.sampled_from(gl2z_matrices(5))


@settings(max_examples=100, deadline=None)
@given(matrices5, st.sampled_from(FAMILY), st.booleans())
def test_mobius_round_trip(M, cf, negate):
    if negate:
        M = IntegerMatrix2(-M.a, -M.b, -M.c, -M.d)
    k, beta = mobius_image(M, cf)
    # beta carries only the fractional part; T_k restores the integer part before inverting
    back = mobius_apply(M.inverse() @ IntegerMatrix2.translation(k), beta)
    assert back == cf


@settings(max_examples=50, deadline=None)
@given(matrices5, st.sampled_from(FAMILY))
def test_mobius_value_oracle(M, cf):
    x = fold_value(cf.prefix, cf.periodic_tail, 200)
    if M.c * x + M.d == 0:
        return
    k, beta = mobius_image(M, cf)
    y = (M.a * x + M.b) / (M.c * x + M.d)
    assert k == math.floor(y)
    assert abs(float(frac_of(y)) - float(fold_value(beta.prefix, beta.periodic_tail, 200))) < 1e-9


# --- verdicts ---------------------------------------------------------------

def test_equivalent_example():
    r = gl2z_equivalent(SILVER, parse_cf("[0; 1, (2)]"))
    assert r.verdict is Verdict.EQUIVALENT and r.witness == (2,)


def test_not_equivalent_example():
    r = gl2z_equivalent(SILVER, GOLDEN)
    assert r.verdict is Verdict.NOT_EQUIVALENT and (r.tail, r.other_tail) == ((2,), (1,))


def test_self_equivalent():
    for cf in FAMILY:
        assert gl2z_equivalent(cf, cf).verdict is Verdict.EQUIVALENT


def test_stream_unknown():
    a = ContinuedFraction.stream([5, 1, 2, 1, 2, 1, 2])
    b = ContinuedFraction.stream([2, 1, 2, 1, 2, 1])
    r = gl2z_equivalent(a, b, depth=3)
    assert r.verdict is Verdict.UNKNOWN and (1, 1) in r.shifts


def test_depth_must_be_positive():
    with pytest.raises(ValueError):
        gl2z_equivalent(SILVER, SILVER, 0)


# --- brute-force search ------------------------------------------------------

def test_search_silver_to_inverse_sqrt2():
    M = gl2z_matrix_search(SILVER, parse_cf("[0; 1, (2)]"), 1, Fraction(1, 10 ** 6))
    assert M == IntegerMatrix2(0, 1, 1, 1)


def test_search_self_identity():
    for cf in FAMILY:
        assert gl2z_matrix_search(cf, cf, 1, Fraction(1, 10)) == IntegerMatrix2.identity()


def test_search_none_for_inequivalent():
    assert gl2z_matrix_search(SILVER, GOLDEN, 5, Fraction(1, 10 ** 8)) is None


def test_enumeration_covers_signed_classes():
    # every det +-1 matrix with entries <= 2 is listed up to sign
    listed = {(m.a, m.b, m.c, m.d) for m in gl2z_matrices(2)}
    for a, b, c, d in itertools.product(range(-2, 3), repeat=4):
        if a * d - b * c in (1, -1):
            assert (a, b, c, d) in listed or (-a, -b, -c, -d) in listed


def test_search_agrees_with_decision():
    tol = Fraction(1, 10 ** 10)
    for x, y in itertools.product(FAMILY, repeat=2):
        M = gl2z_matrix_search(x, y, 8, tol)
        if M is not None:
            assert gl2z_equivalent(x, y).verdict is Verdict.EQUIVALENT
            k, beta = mobius_image(M, x)
            assert beta == y
