from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ietlab import (
    InvalidPermutation,
    NonPositiveLength,
    OutOfDomain,
    Permutation,
    format_quad,
    idoc_check,
    iet_apply,
    iet_new,
    irreducible,
    orbit,
    permutation,
    quad,
    radical,
)
from helpers import FloatIet, random_irreducible, to_mp


def test_permutation_basics():
    sigma = permutation(3, 1, 4, 2)
    assert sigma.n == 4
    assert sigma(1) == 3 and sigma(4) == 2
    assert sigma.inverse()(3) == 1
    assert tuple(sigma.inverse()(sigma(i)) for i in range(1, 5)) == (1, 2, 3, 4)


def test_permutation_validation():
    with pytest.raises(InvalidPermutation):
        permutation(1, 1)
    with pytest.raises(InvalidPermutation):
        permutation(0, 1)
    with pytest.raises(InvalidPermutation):
        permutation(2, 3)
    with pytest.raises(InvalidPermutation):
        Permutation(())


def test_irreducible():
    assert irreducible(permutation(2, 1))
    assert irreducible(permutation(3, 1, 4, 2))
    assert not irreducible(permutation(1, 2))
    assert not irreducible(permutation(2, 1, 3))


def test_lengths_must_be_positive(sqrt2_iet):
    with pytest.raises(NonPositiveLength):
        iet_new(permutation(2, 1), [quad(1), quad(0)])
    with pytest.raises(NonPositiveLength):
        iet_new(permutation(2, 1), [quad(1), quad(-1, 0, 0)])


def test_sqrt2_prefix_sums(sqrt2_iet):
    T = sqrt2_iet
    assert [format_quad(b) for b in T.beta] == ["0/1", "-1/1+1/1r", "1/1"]
    assert [format_quad(t) for t in T.tau] == ["2/1-1/1r", "1/1-1/1r"]
    assert T.total == quad(1)


def test_golden_prefix_sums(golden_iet):
    T = golden_iet
    assert [format_quad(b) for b in T.beta] == ["0/1", "-1/2+1/2r", "1/1"]
    assert [format_quad(t) for t in T.tau] == ["3/2-1/2r", "1/2-1/2r"]


def test_sqrt2_orbit_of_zero(sqrt2_iet):
    values = orbit(sqrt2_iet, quad(0), 1, 5)
    assert [format_quad(x) for x in values] == [
        "2/1-1/1r", "3/1-2/1r", "5/1-3/1r", "6/1-4/1r", "8/1-5/1r",
    ]


def test_orbit_against_float_simulation(sqrt2_iet):
    reference = FloatIet((2, 1), [to_mp(a) for a in sqrt2_iet.alpha])
    x_exact, x_float = quad(0), reference.beta[0]
    for _ in range(300):
        x_exact = sqrt2_iet.apply(x_exact)
        x_float = reference.apply(x_float)
        assert abs(to_mp(x_exact) - x_float) < 1e-45


def test_apply_inverse_round_trip(sqrt2_iet):
    x = quad(Fraction(1, 7))
    assert sqrt2_iet.apply_inverse(sqrt2_iet.apply(x)) == x
    assert sqrt2_iet.apply(sqrt2_iet.apply_inverse(x)) == x


@settings(max_examples=40)
@given(st.fractions(min_value=0, max_value=Fraction(96, 97), max_denominator=97))
def test_bijectivity_on_rationals(value):
    r2 = radical(2)
    T = iet_new(permutation(2, 1), [r2 - 1, 2 - r2])
    x = quad(value)
    assert T.apply_inverse(T.apply(x)) == x


def test_interval_index(sqrt2_iet):
    T = sqrt2_iet
    assert T.interval_index(quad(0)) == 1
    assert T.interval_index(T.beta[1]) == 2
    with pytest.raises(OutOfDomain):
        T.interval_index(quad(1))
    with pytest.raises(OutOfDomain):
        T.apply(quad(-1, 0, 0))


def test_iterate_matches_repeated_apply(sqrt2_iet):
    x = quad(Fraction(1, 3))
    y = sqrt2_iet.iterate(x, 4)
    z = x
    for _ in range(4):
        z = sqrt2_iet.apply(z)
    assert y == z
    assert sqrt2_iet.iterate(x, -4) == sqrt2_iet.apply_inverse(
        sqrt2_iet.apply_inverse(sqrt2_iet.apply_inverse(sqrt2_iet.apply_inverse(x)))
    )


def test_iet_apply_helper(sqrt2_iet):
    assert iet_apply(sqrt2_iet, quad(0)) == sqrt2_iet.apply(quad(0))


def test_idoc_verified_for_quadratic_examples(sqrt2_iet, golden_iet):
    assert idoc_check(sqrt2_iet, 200).verified
    assert idoc_check(golden_iet, 200).verified


def test_idoc_rejects_rational_rotation():
    T = iet_new(permutation(2, 1), [quad(Fraction(1, 3)), quad(Fraction(2, 3))])
    result = idoc_check(T, 10)
    assert not result.verified
    assert result.witness is not None
    assert result.reason
    (i1, k1), (i2, k2) = result.witness
    # the witness names a genuine collision of separation-point orbits
    assert T.iterate(T.beta[i1], k1) == T.iterate(T.beta[i2], k2)


def test_idoc_status_text(sqrt2_iet):
    assert "verified" in idoc_check(sqrt2_iet, 5).status


def test_idoc_depth_recorded(sqrt2_iet):
    assert idoc_check(sqrt2_iet, 37).depth == 37


def test_random_irreducible_helper():
    import random

    rng = random.Random(7)
    for n in range(2, 7):
        sigma = random_irreducible(rng, n)
        assert irreducible(sigma)
