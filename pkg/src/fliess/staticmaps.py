"""Commutative generating series for memoryless (static) maps, and their
composition with Chen-Fliess series.

A :class:`CommutativeSeries` stores a truncated multivariate power series
by exponent vector, which makes commutativity structural and the Cauchy
product an ordinary sparse polynomial multiply.  Evaluating the truncated
series at a point gives the formal static map it generates; composing it
with a proper noncommutative series via :func:`wiener_fliess` substitutes
shuffle powers of the series' components for the commuting variables.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import NotProper, NotPurelyImproper, ShapeMismatch
from .products import shuffle
from .series import CoefficientLike, Series, TermKey, as_coefficient

Exponents = tuple[int, ...]
CommTermKey = tuple[Exponents, int]  # (exponent vector, output component)


class CommutativeSeries:
    """Sparse truncated power series in ``variables`` commuting variables,
    with ``outputs`` rational components, keyed by exponent vector."""

    __slots__ = ("_variables", "_outputs", "_degree", "_terms")

    def __init__(
        self,
        variables: int,
        outputs: int,
        degree: int,
        terms: Iterable[tuple[Sequence[int], int, CoefficientLike]] = (),
    ):
        if variables < 1:
            raise ValueError("need at least one variable")
        if outputs < 1:
            raise ValueError("need at least one output component")
        if degree < 0:
            raise ValueError("truncation degree must be nonnegative")
        table: dict[CommTermKey, Fraction] = {}
        for exponents, component, coeff in terms:
            exps = tuple(int(e) for e in exponents)
            if len(exps) != variables:
                raise ValueError(f"exponent vector {exps} has length {len(exps)}, expected {variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if sum(exps) > degree:
                raise ValueError(f"total degree {sum(exps)} exceeds truncation degree {degree}")
            if not 0 <= component < outputs:
                raise ValueError(f"component {component} outside [0, {outputs})")
            value = table.get((exps, component), _ZERO) + as_coefficient(coeff)
            if value:
                table[(exps, component)] = value
            else:
                table.pop((exps, component), None)
        self._variables = variables
        self._outputs = outputs
        self._degree = degree
        self._terms = table

    @classmethod
    def _raw(cls, variables: int, outputs: int, degree: int, terms: dict[CommTermKey, Fraction]) -> "CommutativeSeries":
        s = object.__new__(cls)
        s._variables = variables
        s._outputs = outputs
        s._degree = degree
        s._terms = terms
        return s

    @classmethod
    def zero(cls, variables: int, outputs: int, degree: int) -> "CommutativeSeries":
        return cls(variables, outputs, degree)

    @classmethod
    def constant(cls, variables: int, values: Sequence[CoefficientLike], degree: int) -> "CommutativeSeries":
        zero_exps = (0,) * variables
        return cls(variables, len(values), degree, [(zero_exps, i, v) for i, v in enumerate(values)])

    @classmethod
    def ones(cls, variables: int, outputs: int, degree: int) -> "CommutativeSeries":
        """Constant 1 in every component: the Cauchy unit."""
        return cls.constant(variables, [1] * outputs, degree)

    @classmethod
    def monomial(
        cls,
        variables: int,
        exponents: Sequence[int],
        coeff: CoefficientLike = 1,
        *,
        degree: int,
        outputs: int = 1,
        component: int = 0,
    ) -> "CommutativeSeries":
        return cls(variables, outputs, degree, [(exponents, component, coeff)])

    # -- shape and access ----------------------------------------------------

    @property
    def variables(self) -> int:
        return self._variables

    @property
    def outputs(self) -> int:
        return self._outputs

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def n_terms(self) -> int:
        return len(self._terms)

    def same_shape(self, other: "CommutativeSeries") -> bool:
        return (
            self._variables == other._variables
            and self._outputs == other._outputs
            and self._degree == other._degree
        )

    def _require_same_shape(self, other: "CommutativeSeries") -> None:
        if not self.same_shape(other):
            raise ShapeMismatch(
                f"commutative series shapes differ: ({self._variables} vars, {self._outputs} outputs, "
                f"degree {self._degree}) vs ({other._variables} vars, {other._outputs} outputs, "
                f"degree {other._degree})"
            )

    def coefficient(self, exponents: Sequence[int], component: int = 0) -> Fraction:
        exps = tuple(int(e) for e in exponents)
        if len(exps) != self._variables:
            raise ShapeMismatch(f"exponent vector length {len(exps)}, expected {self._variables}")
        return self._terms.get((exps, component), _ZERO)

    def constant_term(self) -> tuple[Fraction, ...]:
        zero_exps = (0,) * self._variables
        return tuple(self._terms.get((zero_exps, i), _ZERO) for i in range(self._outputs))

    def terms(self) -> Iterator[tuple[Exponents, int, Fraction]]:
        """Stored terms in canonical order (component, total degree, exponents)."""
        for exps, component in sorted(self._terms, key=lambda k: (k[1], sum(k[0]), k[0])):
            yield exps, component, self._terms[(exps, component)]

    def raw_items(self) -> Iterator[tuple[CommTermKey, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_purely_improper(self) -> bool:
        return all(c != 0 for c in self.constant_term())

    # -- linear structure ------------------------------------------------------

    def __add__(self, other: "CommutativeSeries") -> "CommutativeSeries":
        if not isinstance(other, CommutativeSeries):
            return NotImplemented
        self._require_same_shape(other)
        table = dict(self._terms)
        for key, value in other._terms.items():
            merged = table.get(key, _ZERO) + value
            if merged:
                table[key] = merged
            else:
                table.pop(key, None)
        return CommutativeSeries._raw(self._variables, self._outputs, self._degree, table)

    def __sub__(self, other: "CommutativeSeries") -> "CommutativeSeries":
        if not isinstance(other, CommutativeSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "CommutativeSeries":
        table = {key: -value for key, value in self._terms.items()}
        return CommutativeSeries._raw(self._variables, self._outputs, self._degree, table)

    def scale(self, scalar: CoefficientLike) -> "CommutativeSeries":
        r = as_coefficient(scalar)
        if r == 0:
            return CommutativeSeries._raw(self._variables, self._outputs, self._degree, {})
        table = {key: r * value for key, value in self._terms.items()}
        return CommutativeSeries._raw(self._variables, self._outputs, self._degree, table)

    def scale_components(self, scalars: Sequence[CoefficientLike]) -> "CommutativeSeries":
        if len(scalars) != self._outputs:
            raise ShapeMismatch(f"expected {self._outputs} scalars, got {len(scalars)}")
        factors = [as_coefficient(r) for r in scalars]
        table: dict[CommTermKey, Fraction] = {}
        for (exps, component), value in self._terms.items():
            scaled = factors[component] * value
            if scaled:
                table[(exps, component)] = scaled
        return CommutativeSeries._raw(self._variables, self._outputs, self._degree, table)

    def component(self, i: int) -> "CommutativeSeries":
        if not 0 <= i < self._outputs:
            raise ShapeMismatch(f"component {i} outside [0, {self._outputs})")
        table = {
            (exps, 0): value for (exps, component), value in self._terms.items() if component == i
        }
        return CommutativeSeries._raw(self._variables, 1, self._degree, table)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommutativeSeries):
            return NotImplemented
        return self.same_shape(other) and self._terms == other._terms

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"CommutativeSeries(variables={self._variables}, outputs={self._outputs}, "
            f"degree={self._degree}, terms={len(self._terms)})"
        )


_ZERO = Fraction(0)

Point = Sequence[Union[Fraction, int, float]]


def eval_static(d: CommutativeSeries, z: Point) -> list:
    """Evaluate the truncated polynomial at a point, one value per output.

    Exact when z holds rationals; the simulator passes floats.
    """
    if len(z) != d.variables:
        raise ShapeMismatch(f"point has {len(z)} coordinates, series has {d.variables} variables")
    values = [0] * d.outputs
    for (exps, component), coeff in d.raw_items():
        term = coeff
        for zi, e in zip(z, exps):
            if e:
                term = term * zi**e
        values[component] = values[component] + term
    return values


def cauchy_comm(d: CommutativeSeries, e: CommutativeSeries) -> CommutativeSeries:
    """Componentwise polynomial product, truncated at the shared degree.
    Generates the pointwise product of the two static maps."""
    d._require_same_shape(e)
    degree = d.degree
    table: dict[CommTermKey, Fraction] = {}
    for (exps_a, comp_a), fa in d.raw_items():
        total_a = sum(exps_a)
        for (exps_b, comp_b), fb in e.raw_items():
            if comp_a != comp_b or total_a + sum(exps_b) > degree:
                continue
            key = (tuple(x + y for x, y in zip(exps_a, exps_b)), comp_a)
            merged = table.get(key, _ZERO) + fa * fb
            if merged:
                table[key] = merged
            else:
                del table[key]
    return CommutativeSeries._raw(d.variables, d.outputs, degree, table)


def cauchy_inverse_comm(d: CommutativeSeries) -> CommutativeSeries:
    """Reciprocal of a purely improper commutative series, exact at
    truncation; generates the pointwise multiplicative inverse of the
    static map."""
    consts = d.constant_term()
    if any(a == 0 for a in consts):
        raise NotPurelyImproper(
            "commutative Cauchy inverse needs a nonzero constant coefficient in every component"
        )
    ones = CommutativeSeries.ones(d.variables, d.outputs, d.degree)
    inv_consts = [Fraction(1) / a for a in consts]
    proper_part = ones - d.scale_components(inv_consts)
    acc = ones
    for _ in range(d.degree):
        acc = ones + cauchy_comm(proper_part, acc)
    return acc.scale_components(inv_consts)


def proper_part_order(d: CommutativeSeries) -> int | float:
    """Minimal total degree in the support of d minus its constant term;
    ``math.inf`` when d is constant.  Governs how strongly ``wiener_fliess``
    contracts in its right argument."""
    orders = [sum(exps) for (exps, _) in d._terms if sum(exps) > 0]
    return min(orders) if orders else math.inf


def wiener_fliess(d: CommutativeSeries, c: Series) -> Series:
    """Composition of a static map generated by d with the input-output map
    generated by c: substitute the components of c for the commuting
    variables, replacing powers by shuffle powers.

    Requires c proper so that a monomial of total degree k only contributes
    at word lengths >= k, making the truncated sum exact.  Shuffle powers of
    each component are computed once and reused across monomials.
    """
    if d.variables != c.outputs:
        raise ShapeMismatch(
            f"static series in {d.variables} variables cannot consume {c.outputs} outputs"
        )
    if d.degree != c.degree:
        raise ShapeMismatch(f"degrees differ: {d.degree} vs {c.degree}")
    if not c.is_proper():
        raise NotProper("Wiener-Fliess composition needs a proper right operand")
    degree = c.degree
    one = Series.ones(c.alphabet, 1, degree)
    powers: list[list[Series]] = [[one] for _ in range(c.outputs)]

    def power(i: int, k: int) -> Series:
        column = powers[i]
        while len(column) <= k:
            column.append(shuffle(column[-1], c.component(i)))
        return column[k]

    monomials: dict[Exponents, Series] = {}

    def monomial(exps: Exponents) -> Series:
        found = monomials.get(exps)
        if found is None:
            found = one
            for i, e in enumerate(exps):
                if e:
                    found = shuffle(found, power(i, e))
            monomials[exps] = found
        return found

    table: dict[TermKey, Fraction] = {}
    for (exps, component), coeff in d.raw_items():
        if sum(exps) > degree:
            continue
        for (word, _), value in monomial(exps).raw_items():
            key = (word, component)
            merged = table.get(key, _ZERO) + coeff * value
            if merged:
                table[key] = merged
            else:
                del table[key]
    return Series._raw(c.alphabet, d.outputs, degree, table)
