"""Composition-type products and the multiplicative output feedback group.

Three products live here, all built from one pattern: a word of the left
operand is rewritten letter by letter, right to left, into a series over
the right operand's alphabet, and the results are summed with the left
operand's coefficients.

* ``compose``: cascade of two input-output maps.  Each letter x_i of the
  left word becomes "prepend x0, shuffle with the i-th component of the
  inner series" (the drift letter passes through unchanged apart from the
  x0 prefix).
* ``mixed_compose``: cascade where the inner map's output multiplies the
  input fed to the outer map.  Each non-drift letter x_i becomes "prepend
  x_i, shuffle with the i-th component"; the drift letter is prepended
  unchanged.
* ``mult_compose``: the induced product on delta-tagged series, which makes
  the purely improper ones a group.  ``group_inverse`` computes the inverse
  by fixed-point iteration, exact at truncation.

Every letter application prepends exactly one letter, so a word of length
k only produces words of length >= k; words longer than the truncation
degree contribute nothing and the rewriting truncates as it goes.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotPurelyImproper, ShapeMismatch
from .products import shuffle, shuffle_inverse
from .series import DeltaSeries, Series, TermKey, delta
from .words import Letters


def _prepend(letter: int, s: Series) -> Series:
    """Cauchy product by a single letter on the left, truncating at degree."""
    degree = s.degree
    table: dict[TermKey, Fraction] = {}
    for (letters, component), value in s.raw_items():
        if len(letters) + 1 <= degree:
            table[((letter,) + letters, component)] = value
    return Series._raw(s.alphabet, s.outputs, degree, table)


def _rewrite_words(c: Series, result_alphabet, apply_letter) -> Series:
    """Sum the per-word rewriting over the support of c.

    ``apply_letter(letter, acc)`` maps a scalar series over the result
    alphabet to another one; rewriting runs right to left with the partial
    results memoized per word suffix, which are shared heavily across the
    support.
    """
    one = Series.ones(result_alphabet, 1, c.degree)
    memo: dict[Letters, Series] = {(): one}

    def rewritten(letters: Letters) -> Series:
        found = memo.get(letters)
        if found is not None:
            return found
        acc = apply_letter(letters[0], rewritten(letters[1:]))
        memo[letters] = acc
        return acc

    table: dict[TermKey, Fraction] = {}
    for (letters, component), coeff in c.raw_items():
        for (word, _), value in rewritten(letters).raw_items():
            key = (word, component)
            merged = table.get(key, _ZERO) + coeff * value
            if merged:
                table[key] = merged
            else:
                del table[key]
    return Series._raw(result_alphabet, c.outputs, c.degree, table)


def compose(c: Series, d: Series) -> Series:
    """Composition product: the generating series of the cascade that feeds
    the outputs of the inner map (generated by d) into the input channels
    of the outer map (generated by c).

    The outer series lives over an alphabet with one letter per inner
    output plus drift; the result lives over the inner series' alphabet.
    """
    if c.alphabet.size != d.outputs + 1:
        raise ShapeMismatch(
            f"outer alphabet size {c.alphabet.size} must be inner outputs {d.outputs} + 1"
        )
    if c.degree != d.degree:
        raise ShapeMismatch(f"degrees differ: {c.degree} vs {d.degree}")
    inner = [None] + [d.component(i) for i in range(d.outputs)]

    def apply_letter(letter: int, acc: Series) -> Series:
        if letter > 0:
            acc = shuffle(inner[letter], acc)
        return _prepend(0, acc)

    return _rewrite_words(c, d.alphabet, apply_letter)


def mixed_compose(c: Series, dd: DeltaSeries) -> Series:
    """Multiplicative mixed composition product: the generating series of
    u ↦ F_c[u · F_d[u]], where d is the inner series of the delta tag.

    Linear in c; both operands live over the same alphabet.
    """
    d = dd.inner
    if c.alphabet != d.alphabet:
        raise ShapeMismatch(
            f"alphabets differ: {c.alphabet.size} vs {d.alphabet.size}"
        )
    if c.degree != d.degree:
        raise ShapeMismatch(f"degrees differ: {c.degree} vs {d.degree}")
    inner = [None] + [d.component(i) for i in range(d.outputs)]

    def apply_letter(letter: int, acc: Series) -> Series:
        if letter > 0:
            acc = shuffle(inner[letter], acc)
        return _prepend(letter, acc)

    return _rewrite_words(c, c.alphabet, apply_letter)


def mult_compose(cc: DeltaSeries, dd: DeltaSeries) -> DeltaSeries:
    """Multiplicative composition product on delta series: the cascade of
    two feedforward elements.  The inner series of the result is
    d ⧢ (c mixed-composed with delta d)."""
    c, d = cc.inner, dd.inner
    if c.alphabet != d.alphabet or c.outputs != d.outputs or c.degree != d.degree:
        raise ShapeMismatch("delta series must share alphabet, outputs, and degree")
    return delta(shuffle(d, mixed_compose(c, dd)))


def group_inverse(d: Series) -> Series:
    """Inverse of delta-tagged d in the multiplicative output feedback group.

    The inverse's inner series e solves e = d^{shuffle -1} mixed-composed
    with delta e.  The map on the right gains at least one degree of
    agreement per application (its left factor has a proper part of order
    >= 1), so iterating degree+1 times from e = d^{shuffle -1} is exact at
    truncation; the loop exits early once the iterates stabilize.
    """
    if d.outputs != d.alphabet.size - 1:
        raise ShapeMismatch(
            f"group elements over an alphabet of size {d.alphabet.size} need "
            f"{d.alphabet.size - 1} outputs, got {d.outputs}"
        )
    if not d.is_purely_improper():
        raise NotPurelyImproper("group inverse needs a purely improper series")
    h = shuffle_inverse(d)
    e = h
    for _ in range(d.degree + 1):
        advanced = mixed_compose(h, delta(e))
        if advanced == e:
            break
        e = advanced
    return e


_ZERO = Fraction(0)
