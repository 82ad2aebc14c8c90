"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from fractions import Fraction

from fliess import Alphabet, CommutativeSeries, Series

COEFFS = [-3, -2, -1, 1, 2, 3]


def random_series(
    rng: random.Random,
    alphabet: Alphabet,
    outputs: int,
    degree: int,
    max_terms: int = 5,
    proper: bool = False,
    purely_improper: bool = False,
    max_word_len: int | None = None,
) -> Series:
    """Random sparse series with small integer coefficients.

    ``proper`` keeps the constant coefficient zero; ``purely_improper``
    forces a nonzero constant in every component and keeps the remaining
    random terms off the empty word so it cannot cancel.
    """
    top = degree if max_word_len is None else min(degree, max_word_len)
    terms: list[tuple[tuple[int, ...], int, int]] = []
    if purely_improper:
        for i in range(outputs):
            terms.append(((), i, rng.choice(COEFFS)))
    min_len = 1 if (proper or purely_improper) else 0
    for _ in range(max_terms):
        k = rng.randint(min_len, top)
        word = tuple(rng.randrange(alphabet.size) for _ in range(k))
        terms.append((word, rng.randrange(outputs), rng.choice(COEFFS)))
    return Series(alphabet, outputs, degree, terms)


def random_comm_series(
    rng: random.Random,
    variables: int,
    outputs: int,
    degree: int,
    max_terms: int = 4,
    purely_improper: bool = False,
    min_order: int = 0,
) -> CommutativeSeries:
    """Random sparse commutative series; ``min_order`` bounds the total
    degree of the non-constant terms from below."""
    lo = min_order
    terms: list[tuple[tuple[int, ...], int, int]] = []
    if purely_improper:
        lo = max(lo, 1)
        for i in range(outputs):
            terms.append(((0,) * variables, i, rng.choice(COEFFS)))
    for _ in range(max_terms):
        while True:
            exps = tuple(rng.randint(0, degree) for _ in range(variables))
            if lo <= sum(exps) <= degree:
                break
        terms.append((exps, rng.randrange(outputs), rng.choice(COEFFS)))
    return CommutativeSeries(variables, outputs, degree, terms)


def interleaving_counts(a: tuple[int, ...], b: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Brute-force shuffle oracle: place the letters of ``a`` at every
    choice of positions and fill the rest with ``b``, counting duplicates."""
    n = len(a) + len(b)
    counts: Counter[tuple[int, ...]] = Counter()
    for positions in itertools.combinations(range(n), len(a)):
        slots: list[int | None] = [None] * n
        for letter, pos in zip(a, positions):
            slots[pos] = letter
        rest = iter(b)
        word = tuple(next(rest) if slot is None else slot for slot in slots)
        counts[word] += 1
    return dict(counts)


def frac(value) -> Fraction:
    return Fraction(value)
