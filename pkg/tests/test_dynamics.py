from fractions import Fraction

import pytest

from denjoy.certified import CertifiedValue
from denjoy.circle import Base, BlowupSchedule, Gap, GapIndex, build_map, denjoy_iterate
from denjoy.contfrac import parse_cf
from denjoy.dynamics import (
    draw_base_samples,
    orbit_density,
    semiconjugacy_check,
    wandering_images,
)
from denjoy.errors import ResolvedDepthError
from denjoy.prng import INCREMENT, LCG, MULTIPLIER

SILVER = parse_cf("[0; (2)]")


def silver_map(N):
    return build_map(BlowupSchedule.single(SILVER), N)


def test_lcg_constants_and_sequence():
    assert (MULTIPLIER, INCREMENT) == (6364136223846793005, 1442695040888963407)
    rng = LCG(0)
    first = rng.next_u64()
    assert first == INCREMENT
    assert rng.next_u64() == (MULTIPLIER * INCREMENT + INCREMENT) % 2 ** 64


def test_lcg_reproducible():
    a, b = LCG(42), LCG(42)
    assert [a.fraction() for _ in range(5)] == [b.fraction() for _ in range(5)]


# --- semi-conjugacy --------------------------------------------------------

def test_gap_residual_zero_one_step():
    r = semiconjugacy_check(silver_map(10), 200, 1, seed=3, kinds=("gap",))
    assert r.max_residual == 0 and r.gap_samples == 200


def test_zero_iterations():
    r = semiconjugacy_check(silver_map(10), 1, 0, seed=0)
    assert r.max_residual == 0


def test_base_residual_bounded():
    r = semiconjugacy_check(silver_map(30), 500, 200, seed=1, kinds=("base",))
    assert 0 < r.base_residual <= Fraction(1, 2 ** 25)


def test_bulk_matches_scalar_map():
    # the vectorised route must reproduce denjoy_iterate midpoints exactly
    m = silver_map(12)
    xs, _ = draw_base_samples(m, 5, LCG(9))
    scale = 1 << m.grid_bits
    a = int(m.alpha_step.midpoint * scale)
    for x in xs:
        q = denjoy_iterate(m, Base(CertifiedValue(x)), 40)
        expected = Fraction((int(x * scale) + 40 * a) % scale, scale)
        assert q.angle.midpoint == expected
        assert q.angle.radius == 40 * m.alpha_step.radius


def test_deterministic_given_seed():
    m = silver_map(15)
    assert semiconjugacy_check(m, 100, 50, seed=5) == semiconjugacy_check(m, 100, 50, seed=5)


# --- wandering ------------------------------------------------------------

def test_wandering_silver_depth20():
    r = wandering_images(silver_map(20), 20)
    assert r.passed and r.first_violation is None


def test_wandering_zero():
    assert wandering_images(silver_map(3), 0).passed


def test_wandering_two_orbits():
    m = build_map(BlowupSchedule.from_angles(SILVER, [0, Fraction(1, 2)]), 10)
    r = wandering_images(m, 10)
    assert r.passed and r.gap_orbits == 2 and r.checked_gaps == 42


def test_wandering_beyond_depth():
    with pytest.raises(ResolvedDepthError):
        wandering_images(silver_map(3), 4)


# --- density --------------------------------------------------------------

def test_density_left_end_of_i0():
    r = orbit_density(silver_map(6), Gap(GapIndex(0, 0), 0), 3, 10 ** 4)
    assert r.dense_at_resolution and r.arc_count == 7 and not r.unvisited


def test_density_no_iterations():
    r = orbit_density(silver_map(6), Gap(GapIndex(0, 0), 0), 3, 0)
    assert not r.dense_at_resolution and len(r.visited) == 1 and len(r.unvisited) == 6


def test_density_single_arc():
    r = orbit_density(silver_map(6), Gap(GapIndex(0, 0), 1), 0, 5)
    assert r.dense_at_resolution and r.iterations_used == 1


def test_density_from_base_point():
    r = orbit_density(silver_map(8), Base(CertifiedValue(Fraction(1, 3))), 4, 10 ** 3)
    assert r.dense_at_resolution


def test_density_rejects_interior_gap_point():
    with pytest.raises(ValueError):
        orbit_density(silver_map(6), Gap(GapIndex(0, 0), Fraction(1, 2)), 3, 10)


def test_density_resolution_beyond_depth():
    with pytest.raises(ResolvedDepthError):
        orbit_density(silver_map(2), Gap(GapIndex(0, 0), 0), 3, 10)


def test_density_arc_sequence_oracle():
    # the left end of I_0 visits, at step k, the arc just before x_k
    from conftest import fold_value, frac_of

    value = fold_value((), (2,), 300)
    m = silver_map(4)
    kept = sorted(range(-2, 3), key=lambda n: frac_of(n * value))
    r = orbit_density(m, Gap(GapIndex(0, 0), 0), 2, 1)
    x1 = frac_of(value)
    below = [n for n in kept if frac_of(n * value) < x1]
    assert (len(below) - 1) % 5 in r.visited
