import random
from fractions import Fraction

import pytest

from fliess import (
    Alphabet,
    CommutativeSeries,
    NotProper,
    NotPurelyImproper,
    Series,
    ShapeMismatch,
    cauchy_comm,
    dynamic_feedback,
    dynamic_feedback_by_iteration,
    shuffle,
    static_feedback,
    static_feedback_by_iteration,
    verify_dynamic_fixed_point,
    verify_static_fixed_point,
)
from conftest import random_comm_series, random_series

X = Alphabet(2)
XP = Alphabet(2)


def x1(degree):
    return Series.monomial(X, (1,), degree=degree)


def one_prime(degree):
    return Series.ones(XP, 1, degree)


# -- dynamic feedback ----------------------------------------------------------


def test_identity_feedback_returns_the_plant():
    rng = random.Random(31)
    c = random_series(rng, X, 1, 4)
    assert dynamic_feedback(c, one_prime(4)) == c
    assert verify_dynamic_fixed_point(c, one_prime(4), c)


def test_dynamic_feedback_integrator_with_affine_gain():
    # plant = single integration of the input; feedback map = 1 + integral
    N = 7
    c = x1(N)
    d = one_prime(N) + Series.monomial(XP, (1,), degree=N)
    e = dynamic_feedback(c, d)
    expected_words = [(1,), (1, 0, 1), (1, 0, 1, 0, 1), (1, 0, 1, 0, 1, 0, 1)]
    assert e == Series(X, 1, N, [(w, 0, 1) for w in expected_words])
    assert e == dynamic_feedback_by_iteration(c, d)
    assert verify_dynamic_fixed_point(c, d, e)
    assert not verify_dynamic_fixed_point(c, d, c)


def test_dynamic_feedback_with_constant_gain():
    # loop gain 2 doubles the channel: y = int(2 v)
    N = 4
    c = x1(N)
    d = Series.constant(XP, [2], N)
    e = dynamic_feedback(c, d)
    assert e == Series.monomial(X, (1,), 2, degree=N)
    assert e == dynamic_feedback_by_iteration(c, d)
    assert verify_dynamic_fixed_point(c, d, e)


def test_dynamic_feedback_requires_purely_improper_controller():
    with pytest.raises(NotPurelyImproper):
        dynamic_feedback(x1(3), Series.monomial(XP, (1,), degree=3))


def test_dynamic_feedback_shape_errors():
    with pytest.raises(ShapeMismatch):
        dynamic_feedback(x1(3), Series.ones(Alphabet(3), 1, 3))
    with pytest.raises(ShapeMismatch):
        dynamic_feedback(x1(3), Series.ones(XP, 2, 3))
    with pytest.raises(ShapeMismatch):
        dynamic_feedback(x1(3), one_prime(4))


def test_dynamic_fixed_point_is_unique_across_starts():
    rng = random.Random(32)
    for _ in range(5):
        c = random_series(rng, X, 1, 4, max_terms=3)
        d = random_series(rng, XP, 1, 4, max_terms=3, purely_improper=True)
        from_zero = dynamic_feedback_by_iteration(c, d)
        from_plant = dynamic_feedback_by_iteration(c, d, start=c)
        assert from_zero == from_plant == dynamic_feedback(c, d)


def test_dynamic_feedback_is_a_right_group_action():
    rng = random.Random(33)
    for _ in range(5):
        c = random_series(rng, X, 1, 4, max_terms=3)
        d1 = random_series(rng, XP, 1, 4, max_terms=3, purely_improper=True)
        d2 = random_series(rng, XP, 1, 4, max_terms=3, purely_improper=True)
        chained = dynamic_feedback(dynamic_feedback(c, d1), d2)
        assert chained == dynamic_feedback(c, shuffle(d1, d2))


def test_dynamic_feedback_mimo_shapes():
    # two-input two-output plant against a matching feedback path
    rng = random.Random(34)
    XW = Alphabet(3)
    c = random_series(rng, XW, 2, 3, max_terms=3)
    d = random_series(rng, Alphabet(3), 2, 3, max_terms=3, purely_improper=True)
    e = dynamic_feedback(c, d)
    assert e.outputs == 2 and e.alphabet == XW
    assert verify_dynamic_fixed_point(c, d, e)


# -- static feedback -------------------------------------------------------------


def unit_static(degree):
    return CommutativeSeries.ones(1, 1, degree)


def test_static_identity_feedback_returns_the_plant():
    rng = random.Random(35)
    c = random_series(rng, X, 1, 4, proper=True)
    assert static_feedback(c, unit_static(4)) == c
    assert verify_static_fixed_point(c, unit_static(4), c)


def test_static_feedback_integrator_with_affine_gain():
    # plant = integrator, static map z -> 1 + z: closed loop collects every
    # Cauchy power of the input letter with unit coefficients
    N = 6
    c = x1(N)
    d = CommutativeSeries(1, 1, N, [((0,), 0, 1), ((1,), 0, 1)])
    e = static_feedback(c, d)
    expected = Series(X, 1, N, [(tuple([1] * k), 0, 1) for k in range(1, N + 1)])
    assert e == expected
    assert e == static_feedback_by_iteration(c, d)
    assert verify_static_fixed_point(c, d, e)
    assert not verify_static_fixed_point(c, d, Series.zero(X, 1, N))


def test_static_feedback_with_constant_gain():
    N = 4
    c = x1(N)
    d = CommutativeSeries.constant(1, [2], N)
    e = static_feedback(c, d)
    assert e == Series.monomial(X, (1,), 2, degree=N)
    assert e == static_feedback_by_iteration(c, d)


def test_static_feedback_result_is_proper():
    rng = random.Random(36)
    for _ in range(5):
        c = random_series(rng, X, 1, 4, proper=True, max_terms=3)
        d = random_comm_series(rng, 1, 1, 4, purely_improper=True, max_terms=3)
        assert static_feedback(c, d).is_proper()


def test_static_feedback_preconditions():
    with pytest.raises(NotProper):
        static_feedback(Series.ones(X, 1, 3), unit_static(3))
    with pytest.raises(NotPurelyImproper):
        static_feedback(x1(3), CommutativeSeries.monomial(1, (1,), degree=3))
    with pytest.raises(ShapeMismatch):
        static_feedback(x1(3), CommutativeSeries.ones(2, 1, 3))
    with pytest.raises(ShapeMismatch):
        static_feedback(x1(3), CommutativeSeries.ones(1, 2, 3))
    with pytest.raises(NotProper):
        verify_static_fixed_point(x1(3), unit_static(3), Series.ones(X, 1, 3))


def test_static_fixed_point_is_unique_across_starts():
    rng = random.Random(37)
    for _ in range(5):
        c = random_series(rng, X, 1, 4, proper=True, max_terms=3)
        d = random_comm_series(rng, 1, 1, 4, purely_improper=True, max_terms=3)
        from_zero = static_feedback_by_iteration(c, d)
        from_plant = static_feedback_by_iteration(c, d, start=c)
        assert from_zero == from_plant == static_feedback(c, d)


def test_static_feedback_is_a_right_group_action():
    rng = random.Random(38)
    for _ in range(5):
        c = random_series(rng, X, 1, 4, proper=True, max_terms=3)
        d1 = random_comm_series(rng, 1, 1, 4, purely_improper=True, max_terms=3)
        d2 = random_comm_series(rng, 1, 1, 4, purely_improper=True, max_terms=3)
        chained = static_feedback(static_feedback(c, d1), d2)
        assert chained == static_feedback(c, cauchy_comm(d1, d2))
