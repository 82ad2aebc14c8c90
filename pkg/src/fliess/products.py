"""Cauchy and shuffle products on truncated series, with their inverses.

Both products act componentwise on multi-output series (Hadamard
convention).  Inverses exist exactly for purely improper series: the
geometric sums terminate at the truncation degree because the proper part
has order at least one, so the results are exact at truncation, not
approximate.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .errors import NotPurelyImproper
from .series import Series, TermKey
from .words import Letters

WordMultiset = tuple[tuple[Letters, int], ...]


@lru_cache(maxsize=None)
def _shuffle_letters(a: Letters, b: Letters) -> WordMultiset:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    counts: Counter[Letters] = Counter()
    for word, k in shuffle_words(a[1:], b):
        counts[(a[0],) + word] += k
    for word, k in shuffle_words(a, b[1:]):
        counts[(b[0],) + word] += k
    return tuple(counts.items())


def shuffle_words(a: Letters, b: Letters) -> WordMultiset:
    """Shuffle of two raw words as ((word, multiplicity), ...) pairs.

    Defined by the recursion that peels the head letter off either factor;
    equivalently, all interleavings of a and b counted with multiplicity.
    Results are memoized process-wide (the lru_cache is safe to share
    between threads); callers must not mutate them.
    """
    # The product is commutative; normalize the key to halve the cache.
    if b < a:
        a, b = b, a
    return _shuffle_letters(a, b)


def _bucket_by_length(c: Series) -> dict[tuple[int, int], list[tuple[Letters, Fraction]]]:
    """Group stored terms as (component, word length) -> [(letters, coeff)]."""
    buckets: dict[tuple[int, int], list[tuple[Letters, Fraction]]] = {}
    for (letters, component), value in c.raw_items():
        buckets.setdefault((component, len(letters)), []).append((letters, value))
    return buckets


def _binary_product(c: Series, d: Series, combine) -> Series:
    """Shared driver for Cauchy/shuffle: pair terms of the same component
    whose lengths fit under the truncation degree, combining words with
    ``combine``."""
    c._require_same_shape(d)
    degree = c.degree
    table: dict[TermKey, Fraction] = {}
    left = _bucket_by_length(c)
    right = _bucket_by_length(d)
    for (component, la), lterms in left.items():
        for lb in range(degree - la + 1):
            rterms = right.get((component, lb))
            if not rterms:
                continue
            for wa, fa in lterms:
                for wb, fb in rterms:
                    coeff = fa * fb
                    for word, mult in combine(wa, wb):
                        key = (word, component)
                        value = table.get(key, _ZERO) + coeff * mult
                        if value:
                            table[key] = value
                        else:
                            del table[key]
    return Series._raw(c.alphabet, c.outputs, degree, table)


def cauchy(c: Series, d: Series) -> Series:
    """Cauchy (catenation) product: the coefficient of a word collects all
    of its two-factor splittings.  Associative and unital but not
    commutative."""
    return _binary_product(c, d, lambda wa, wb: ((wa + wb, 1),))


def shuffle(c: Series, d: Series) -> Series:
    """Shuffle product: bilinear extension of the word interleaving.
    Commutative and associative; at the operator level it realizes the
    pointwise product of the corresponding input-output maps."""
    return _binary_product(c, d, shuffle_words)


def shuffle_power(c: Series, k: int) -> Series:
    """k-fold shuffle of c with itself; k = 0 gives the constant ones series."""
    if k < 0:
        raise ValueError("shuffle power needs a nonnegative exponent")
    result = Series.ones(c.alphabet, c.outputs, c.degree)
    for _ in range(k):
        result = shuffle(result, c)
    return result


def _improper_inverse(d: Series, product, kind: str) -> Series:
    """Inverse of a purely improper series under the given product.

    Writes d = a·(1 - p) per component, with a the constant coefficient and
    p proper, and sums the geometric series in p.  ord(p) >= 1 bounds the
    sum at the truncation degree, evaluated in Horner form.
    """
    consts = d.constant_term()
    if any(a == 0 for a in consts):
        raise NotPurelyImproper(
            f"{kind} inverse needs a nonzero constant coefficient in every component"
        )
    ones = Series.ones(d.alphabet, d.outputs, d.degree)
    inv_consts = [Fraction(1) / a for a in consts]
    proper_part = ones - d.scale_components(inv_consts)
    acc = ones
    for _ in range(d.degree):
        acc = ones + product(proper_part, acc)
    return acc.scale_components(inv_consts)


def cauchy_inverse(d: Series) -> Series:
    """Inverse under the Cauchy product; cauchy(d, cauchy_inverse(d))
    equals the ones series at truncation."""
    return _improper_inverse(d, cauchy, "Cauchy")


def shuffle_inverse(d: Series) -> Series:
    """Inverse under the shuffle product; shuffle(d, shuffle_inverse(d))
    equals the ones series at truncation."""
    return _improper_inverse(d, shuffle, "shuffle")


_ZERO = Fraction(0)
