import random
from fractions import Fraction

import pytest

from fliess import (
    Alphabet,
    NotPurelyImproper,
    Series,
    ShapeMismatch,
    cauchy,
    compose,
    delta,
    group_inverse,
    mixed_compose,
    mult_compose,
    shuffle,
    shuffle_inverse,
)
from conftest import random_series

X = Alphabet(2)
XP = Alphabet(2)  # outer alphabet for cascades with one inner output
N = 4


def mono(letters, coeff=1, alphabet=X, degree=N):
    return Series.monomial(alphabet, letters, coeff, degree=degree)


def one(alphabet=X, outputs=1, degree=N):
    return Series.ones(alphabet, outputs, degree)


def proper_part(c):
    return c - Series.constant(c.alphabet, c.constant_term(), c.degree)


# -- composition product -----------------------------------------------------


def test_compose_on_constant_left_operand():
    d = random_series(random.Random(0), X, 1, N)
    assert compose(one(XP), d) == one()


def test_compose_single_letter_prepends_drift():
    d = one() + mono((1,))
    assert compose(mono((1,), alphabet=XP), d) == mono((0,)) + mono((0, 1))


def test_compose_derived_example():
    # two cascade letters against the constant series stack into two drifts
    assert compose(mono((1, 1), alphabet=XP), one()) == mono((0, 0))


def test_compose_drift_letter_is_transparent():
    d = random_series(random.Random(1), X, 1, N)
    assert compose(mono((0,), alphabet=XP), d) == mono((0,))


def test_compose_shape_errors():
    with pytest.raises(ShapeMismatch):
        compose(one(Alphabet(3)), one())  # outer needs inner outputs + 1 letters
    with pytest.raises(ShapeMismatch):
        compose(one(XP), Series.ones(X, 1, N + 1))


def test_compose_is_linear_in_left_argument():
    rng = random.Random(2)
    a = random_series(rng, XP, 1, N)
    b = random_series(rng, XP, 1, N)
    d = random_series(rng, X, 1, N)
    assert compose(a + b, d) == compose(a, d) + compose(b, d)


def test_shuffle_distributes_over_compose():
    rng = random.Random(3)
    for _ in range(15):
        c = random_series(rng, XP, 1, N)
        d = random_series(rng, XP, 1, N)
        e = random_series(rng, X, 1, N)
        assert compose(shuffle(c, d), e) == shuffle(compose(c, e), compose(d, e))


def test_compose_gains_one_order_in_right_argument():
    rng = random.Random(4)
    for _ in range(25):
        c = random_series(rng, XP, 1, N)
        d = random_series(rng, X, 1, N)
        e = random_series(rng, X, 1, N)
        assert (compose(c, d) - compose(c, e)).order() >= (d - e).order() + 1


# -- multiplicative mixed composition ----------------------------------------


def test_mixed_compose_with_unit_gain_is_identity():
    rng = random.Random(5)
    c = random_series(rng, X, 1, N)
    assert mixed_compose(c, delta(one())) == c


def test_mixed_compose_single_letter():
    # rewriting one non-drift letter multiplies the gain in on the left
    d = random_series(random.Random(6), X, 1, N)
    assert mixed_compose(mono((1,)), delta(d)) == cauchy(mono((1,)), d)


def test_mixed_compose_derived_example():
    d = one() + mono((1,))
    assert mixed_compose(mono((0, 1)), delta(d)) == mono((0, 1)) + mono((0, 1, 1))


def test_mixed_compose_shape_errors():
    with pytest.raises(ShapeMismatch):
        mixed_compose(one(Alphabet(3)), delta(one()))
    with pytest.raises(ShapeMismatch):
        mixed_compose(Series.ones(X, 1, N + 1), delta(one()))


def test_shuffle_distributes_over_mixed_compose():
    rng = random.Random(7)
    for _ in range(15):
        c = random_series(rng, X, 1, N)
        d = random_series(rng, X, 1, N)
        e = random_series(rng, X, 1, N)
        lhs = mixed_compose(shuffle(c, d), delta(e))
        rhs = shuffle(mixed_compose(c, delta(e)), mixed_compose(d, delta(e)))
        assert lhs == rhs


def test_mixed_compose_contraction_order_gain():
    rng = random.Random(8)
    for _ in range(25):
        c = random_series(rng, X, 1, N)
        d = random_series(rng, X, 1, N)
        e = random_series(rng, X, 1, N)
        gain = (mixed_compose(c, delta(d)) - mixed_compose(c, delta(e))).order()
        assert gain >= proper_part(c).order() + (d - e).order()


def test_compose_and_mixed_compose_are_associative_in_combination():
    rng = random.Random(9)
    for _ in range(15):
        c = random_series(rng, XP, 1, N)
        d = random_series(rng, X, 1, N)
        e = random_series(rng, X, 1, N)
        assert compose(c, mixed_compose(d, delta(e))) == mixed_compose(compose(c, d), delta(e))


# -- multiplicative composition on delta series -------------------------------


def test_mult_compose_identity_element():
    rng = random.Random(10)
    c = random_series(rng, X, 1, N)
    assert mult_compose(delta(c), delta(one())).inner == c
    d = random_series(rng, X, 1, N)
    assert mult_compose(delta(one()), delta(d)).inner == d


def test_mult_compose_constants_multiply():
    two = Series.constant(X, [2], N)
    three = Series.constant(X, [3], N)
    assert mult_compose(delta(two), delta(three)).inner == Series.constant(X, [6], N)


def test_mult_compose_is_associative():
    rng = random.Random(11)
    for _ in range(15):
        a = delta(random_series(rng, X, 1, N))
        b = delta(random_series(rng, X, 1, N))
        c = delta(random_series(rng, X, 1, N))
        assert mult_compose(mult_compose(a, b), c) == mult_compose(a, mult_compose(b, c))


def test_mixed_compose_is_a_right_monoid_action():
    rng = random.Random(12)
    for _ in range(15):
        c = random_series(rng, X, 1, N)
        dd = delta(random_series(rng, X, 1, N))
        ee = delta(random_series(rng, X, 1, N))
        lhs = mixed_compose(mixed_compose(c, dd), ee)
        rhs = mixed_compose(c, mult_compose(dd, ee))
        assert lhs == rhs


# -- group inverse -------------------------------------------------------------


def test_group_inverse_of_identity_and_constants():
    assert group_inverse(one()) == one()
    half = Series.constant(X, [Fraction(1, 2)], N)
    assert group_inverse(Series.constant(X, [2], N)) == half


def test_group_inverse_requires_purely_improper():
    with pytest.raises(NotPurelyImproper):
        group_inverse(mono((1,)))


def test_group_inverse_requires_delta_compatible_shape():
    with pytest.raises(ShapeMismatch):
        group_inverse(Series.ones(X, 2, N))


def test_group_inverse_satisfies_both_group_laws():
    rng = random.Random(13)
    for _ in range(6):
        d = random_series(rng, X, 1, N, purely_improper=True)
        e = group_inverse(d)
        assert mult_compose(delta(d), delta(e)).inner == one()
        assert mult_compose(delta(e), delta(d)).inner == one()


def test_group_inverse_fixed_point_relations():
    rng = random.Random(14)
    for _ in range(6):
        c = random_series(rng, X, 1, N, purely_improper=True)
        e = group_inverse(c)
        assert e == mixed_compose(shuffle_inverse(c), delta(e))
        assert shuffle_inverse(e) == mixed_compose(c, delta(e))
        # left-inverse equation: c is recovered from its inverse
        assert c == mixed_compose(shuffle_inverse(e), delta(c))


def test_group_inverse_multi_output():
    rng = random.Random(15)
    X3 = Alphabet(3)
    d = random_series(rng, X3, 2, N, purely_improper=True, max_terms=4)
    e = group_inverse(d)
    ones = Series.ones(X3, 2, N)
    assert mult_compose(delta(d), delta(e)).inner == ones
    assert mult_compose(delta(e), delta(d)).inner == ones
