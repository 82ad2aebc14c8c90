"""Alphabets and words: the free-monoid substrate of the series algebra.

Letters are small integer indices.  Index 0 is reserved for the drift
letter x0 in every alphabet, because the composition-type products treat
it specially.  Words are immutable and safe to share.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterator

from .errors import ShapeMismatch

Letters = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """A finite alphabet {x0, x1, ..., x_{size-1}} of noncommuting letters."""

    size: int

    def __post_init__(self) -> None:
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"alphabet size must be a positive integer, got {self.size!r}")

    def __contains__(self, letter: int) -> bool:
        return 0 <= letter < self.size


@total_ordering
@dataclass(frozen=True)
class Word:
    """A finite sequence of letters from one alphabet.

    The empty word is the monoid identity; words compare in length-lex
    order (shorter first, then lexicographic by letter index).
    """

    alphabet: Alphabet
    letters: Letters

    def __post_init__(self) -> None:
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        for x in letters:
            if x not in self.alphabet:
                raise ValueError(f"letter x{x} outside alphabet of size {self.alphabet.size}")

    def __len__(self) -> int:
        return len(self.letters)

    def letter_count(self, letter: int) -> int:
        """Number of occurrences of the given letter."""
        return self.letters.count(letter)

    def __lt__(self, other: "Word") -> bool:
        return compare_length_lex(self, other) < 0

    def __str__(self) -> str:
        return render_letters(self.letters)


def render_letters(letters: Letters) -> str:
    """Text form of a raw letter tuple: "x0 x1"; the empty word is "e"."""
    if not letters:
        return "e"
    return " ".join(f"x{x}" for x in letters)


def empty_word(alphabet: Alphabet) -> Word:
    return Word(alphabet, ())


def concat(a: Word, b: Word) -> Word:
    """Catenation of two words over the same alphabet."""
    if a.alphabet != b.alphabet:
        raise ShapeMismatch(f"cannot concatenate words over alphabets of size {a.alphabet.size} and {b.alphabet.size}")
    return Word(a.alphabet, a.letters + b.letters)


def compare_length_lex(a: Word, b: Word) -> int:
    """Canonical total order: -1, 0, or 1 as a sorts before, equal to, or after b.

    Shorter words come first; equal lengths break ties lexicographically
    by letter index.
    """
    if a.alphabet != b.alphabet:
        raise ShapeMismatch("cannot compare words over different alphabets")
    ka, kb = length_lex_key(a.letters), length_lex_key(b.letters)
    return (ka > kb) - (ka < kb)


def length_lex_key(letters: Letters) -> tuple[int, Letters]:
    """Sort key inducing the length-lex order on raw letter tuples."""
    return (len(letters), letters)


def iter_letter_tuples(size: int, degree: int) -> Iterator[Letters]:
    """All raw letter tuples of length <= degree, in length-lex order."""
    for k in range(degree + 1):
        yield from itertools.product(range(size), repeat=k)


def words_up_to(alphabet: Alphabet, degree: int) -> list[Word]:
    """All words of length <= degree in length-lex order.

    The count is sum(size**k for k = 0..degree).
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return [Word(alphabet, letters) for letters in iter_letter_tuples(alphabet.size, degree)]
