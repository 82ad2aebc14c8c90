"""Sparse truncated formal power series with exact rational coefficients.

A :class:`Series` maps words over a fixed alphabet to vectors of rationals,
up to a truncation degree N.  Coefficients of words longer than N are
unknown (not zero); asking for one raises :class:`~fliess.errors.BeyondTruncation`.
All algebra on :class:`Series` is exact, so identities between series can be
checked with equality rather than tolerances.  Floats enter only in the
simulator.

Series are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import BeyondTruncation, ShapeMismatch
from .words import Alphabet, Letters, Word, length_lex_key

Coefficient = Fraction
CoefficientLike = Union[Fraction, int]
TermKey = tuple[Letters, int]  # (letters, output component)


def as_coefficient(value: CoefficientLike) -> Fraction:
    """Coerce an exact scalar to a canonical Fraction; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


def _as_letters(word: Union[Word, Letters], alphabet: Alphabet) -> Letters:
    if isinstance(word, Word):
        if word.alphabet != alphabet:
            raise ShapeMismatch("word alphabet does not match series alphabet")
        return word.letters
    return tuple(int(x) for x in word)


class Series:
    """A sparse map (word, component) -> rational, truncated at degree N.

    ``outputs`` is the number of vector components; products between
    multi-output series act componentwise (Hadamard convention).
    """

    __slots__ = ("_alphabet", "_outputs", "_degree", "_terms")

    def __init__(
        self,
        alphabet: Alphabet,
        outputs: int,
        degree: int,
        terms: Iterable[tuple[Union[Word, Letters], int, CoefficientLike]] = (),
    ):
        if outputs < 1:
            raise ValueError("a series needs at least one output component")
        if degree < 0:
            raise ValueError("truncation degree must be nonnegative")
        table: dict[TermKey, Fraction] = {}
        for word, component, coeff in terms:
            letters = _as_letters(word, alphabet)
            for x in letters:
                if x not in alphabet:
                    raise ValueError(f"letter x{x} outside alphabet of size {alphabet.size}")
            if len(letters) > degree:
                raise ValueError(f"word of length {len(letters)} exceeds truncation degree {degree}")
            if not 0 <= component < outputs:
                raise ValueError(f"component {component} outside [0, {outputs})")
            value = table.get((letters, component), _ZERO) + as_coefficient(coeff)
            if value:
                table[(letters, component)] = value
            else:
                table.pop((letters, component), None)
        self._alphabet = alphabet
        self._outputs = outputs
        self._degree = degree
        self._terms = table

    @classmethod
    def _raw(cls, alphabet: Alphabet, outputs: int, degree: int, terms: dict[TermKey, Fraction]) -> "Series":
        """Fast internal constructor; callers guarantee canonical terms."""
        s = object.__new__(cls)
        s._alphabet = alphabet
        s._outputs = outputs
        s._degree = degree
        s._terms = terms
        return s

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet, outputs: int, degree: int) -> "Series":
        return cls(alphabet, outputs, degree)

    @classmethod
    def constant(cls, alphabet: Alphabet, values: Sequence[CoefficientLike], degree: int) -> "Series":
        """Constant series with the given value per output component."""
        return cls(alphabet, len(values), degree, [((), i, v) for i, v in enumerate(values)])

    @classmethod
    def ones(cls, alphabet: Alphabet, outputs: int, degree: int) -> "Series":
        """The constant series with coefficient 1 of the empty word in every
        component: the unit of both the Cauchy and the shuffle algebra."""
        return cls.constant(alphabet, [1] * outputs, degree)

    @classmethod
    def monomial(
        cls,
        alphabet: Alphabet,
        word: Union[Word, Letters],
        coeff: CoefficientLike = 1,
        *,
        degree: int,
        outputs: int = 1,
        component: int = 0,
    ) -> "Series":
        return cls(alphabet, outputs, degree, [(word, component, coeff)])

    # -- shape -------------------------------------------------------------

    @property
    def alphabet(self) -> Alphabet:
        return self._alphabet

    @property
    def outputs(self) -> int:
        return self._outputs

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def n_terms(self) -> int:
        return len(self._terms)

    def same_shape(self, other: "Series") -> bool:
        return (
            self._alphabet == other._alphabet
            and self._outputs == other._outputs
            and self._degree == other._degree
        )

    def _require_same_shape(self, other: "Series") -> None:
        if not self.same_shape(other):
            raise ShapeMismatch(
                f"series shapes differ: (alphabet {self._alphabet.size}, outputs {self._outputs}, "
                f"degree {self._degree}) vs (alphabet {other._alphabet.size}, outputs {other._outputs}, "
                f"degree {other._degree})"
            )

    # -- coefficient access ------------------------------------------------

    def coefficient(self, word: Union[Word, Letters], component: int = 0) -> Fraction:
        """Stored coefficient of ``word`` in the given component, or zero.

        Words longer than the truncation degree have unknown coefficients and
        raise :class:`BeyondTruncation`.
        """
        letters = _as_letters(word, self._alphabet)
        if len(letters) > self._degree:
            raise BeyondTruncation(
                f"word of length {len(letters)} is beyond truncation degree {self._degree}"
            )
        if not 0 <= component < self._outputs:
            raise ShapeMismatch(f"component {component} outside [0, {self._outputs})")
        return self._terms.get((letters, component), _ZERO)

    def constant_term(self) -> tuple[Fraction, ...]:
        """The empty-word coefficient of every component."""
        return tuple(self._terms.get(((), i), _ZERO) for i in range(self._outputs))

    def terms(self) -> Iterator[tuple[Word, int, Fraction]]:
        """Stored terms in canonical order (component, then length-lex word)."""
        for (letters, component) in sorted(self._terms, key=lambda k: (k[1], length_lex_key(k[0]))):
            yield Word(self._alphabet, letters), component, self._terms[(letters, component)]

    def raw_items(self) -> Iterator[tuple[TermKey, Fraction]]:
        """Unordered stored ((letters, component), coefficient) pairs."""
        return iter(self._terms.items())

    # -- predicates and order ----------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_proper(self) -> bool:
        """True when every component has zero constant coefficient."""
        return all(c == 0 for c in self.constant_term())

    def is_purely_improper(self) -> bool:
        """True when every component has a nonzero constant coefficient."""
        return all(c != 0 for c in self.constant_term())

    def order(self) -> int | float:
        """Length of the shortest word in the support; ``math.inf`` for the
        zero series."""
        if not self._terms:
            return math.inf
        return min(len(letters) for letters, _ in self._terms)

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        self._require_same_shape(other)
        table = dict(self._terms)
        for key, value in other._terms.items():
            merged = table.get(key, _ZERO) + value
            if merged:
                table[key] = merged
            else:
                table.pop(key, None)
        return Series._raw(self._alphabet, self._outputs, self._degree, table)

    def __sub__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Series":
        table = {key: -value for key, value in self._terms.items()}
        return Series._raw(self._alphabet, self._outputs, self._degree, table)

    def scale(self, scalar: CoefficientLike) -> "Series":
        r = as_coefficient(scalar)
        if r == 0:
            return Series._raw(self._alphabet, self._outputs, self._degree, {})
        table = {key: r * value for key, value in self._terms.items()}
        return Series._raw(self._alphabet, self._outputs, self._degree, table)

    def scale_components(self, scalars: Sequence[CoefficientLike]) -> "Series":
        """Multiply each output component by its own exact scalar."""
        if len(scalars) != self._outputs:
            raise ShapeMismatch(f"expected {self._outputs} scalars, got {len(scalars)}")
        factors = [as_coefficient(r) for r in scalars]
        table: dict[TermKey, Fraction] = {}
        for (letters, component), value in self._terms.items():
            scaled = factors[component] * value
            if scaled:
                table[(letters, component)] = scaled
        return Series._raw(self._alphabet, self._outputs, self._degree, table)

    def __mul__(self, scalar: CoefficientLike) -> "Series":
        if isinstance(scalar, (int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    __rmul__ = __mul__

    def component(self, i: int) -> "Series":
        """The i-th output component as a scalar (single-output) series."""
        if not 0 <= i < self._outputs:
            raise ShapeMismatch(f"component {i} outside [0, {self._outputs})")
        table = {
            (letters, 0): value
            for (letters, component), value in self._terms.items()
            if component == i
        }
        return Series._raw(self._alphabet, 1, self._degree, table)

    # -- equality / display --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.same_shape(other) and self._terms == other._terms

    __hash__ = None  # mutable-by-construction dict inside; compare by value only

    def __repr__(self) -> str:
        return (
            f"Series(alphabet={self._alphabet.size}, outputs={self._outputs}, "
            f"degree={self._degree}, terms={len(self._terms)})"
        )

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, component, coeff in self.terms():
            tag = f"[{component}]" if self._outputs > 1 else ""
            parts.append(f"({coeff})·{word}{tag}")
        return " + ".join(parts)


_ZERO = Fraction(0)


@dataclass(frozen=True)
class DeltaSeries:
    """A series tagged as the multiplicative-feedforward element delta ⧢ d.

    The tag marks d as the generating series of the operator u ↦ u·F_d[u].
    The symbolic unit delta itself is never stored; only the inner series
    is.  The inner series must have one output per non-drift letter of its
    alphabet, since the feedforward multiplies each input channel.
    """

    inner: Series

    def __post_init__(self) -> None:
        if self.inner.outputs != self.inner.alphabet.size - 1:
            raise ShapeMismatch(
                f"delta series over an alphabet of size {self.inner.alphabet.size} needs "
                f"{self.inner.alphabet.size - 1} outputs, got {self.inner.outputs}"
            )


def delta(inner: Series) -> DeltaSeries:
    """Tag a series as the feedforward element delta ⧢ inner."""
    return DeltaSeries(inner)


def stack(parts: Sequence[Series]) -> Series:
    """Concatenate the output components of several series over one alphabet
    and degree into a single multi-output series."""
    if not parts:
        raise ValueError("stack needs at least one series")
    first = parts[0]
    table: dict[TermKey, Fraction] = {}
    offset = 0
    for part in parts:
        if part.alphabet != first.alphabet or part.degree != first.degree:
            raise ShapeMismatch("stacked series must share alphabet and degree")
        for (letters, component), value in part.raw_items():
            table[(letters, component + offset)] = value
        offset += part.outputs
    return Series._raw(first.alphabet, offset, first.degree, table)


def ultrametric(c: Series, d: Series, sigma: CoefficientLike = Fraction(1, 2)) -> Fraction:
    """Distance sigma**order(c - d); zero when the series agree at truncation.

    Satisfies the strong triangle inequality.  Diagnostic only: fixed-point
    solvers in this package rely on exact degree-gain arguments, not on
    numeric contraction estimates.
    """
    s = as_coefficient(sigma)
    if not 0 < s < 1:
        raise ValueError("sigma must lie strictly between 0 and 1")
    c._require_same_shape(d)
    gap = (c - d).order()
    if gap == math.inf:
        return _ZERO
    return s ** gap
