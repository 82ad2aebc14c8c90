"""Closed-loop generating series for multiplicative output feedback.

Two interconnections are covered.  In both, the plant input is the
external input multiplied (channelwise) by the feedback path's output:

* dynamic feedback: the feedback path is itself an input-output map with
  generating series d, and the closed loop solves
  ``e = c mixed-composed with delta(d composed with e)``;
* static feedback: the feedback path is a memoryless map generated by a
  commutative series d, and the closed loop solves
  ``e = c mixed-composed with delta(d wiener-fliess-composed with e)``.

Each product is computed two ways: a closed formula routed through the
feedback group inverse, and direct iteration of the defining fixed-point
equation.  The iteration gains at least one degree of coefficient
agreement per pass, so degree+1 passes are exact at truncation; it is the
built-in oracle the test suite compares the formula against.
"""

from __future__ import annotations

from .composition import compose, group_inverse, mixed_compose
from .errors import NotProper, NotPurelyImproper, ShapeMismatch
from .products import shuffle_inverse
from .series import Series, delta
from .staticmaps import CommutativeSeries, cauchy_inverse_comm, wiener_fliess


def _check_dynamic_shapes(c: Series, d: Series) -> None:
    # plant: m inputs -> q outputs; feedback: q inputs -> m outputs
    m = c.alphabet.size - 1
    q = c.outputs
    if d.alphabet.size != q + 1:
        raise ShapeMismatch(
            f"feedback alphabet size {d.alphabet.size} must be plant outputs {q} + 1"
        )
    if d.outputs != m:
        raise ShapeMismatch(
            f"feedback outputs {d.outputs} must match plant input channels {m}"
        )
    if c.degree != d.degree:
        raise ShapeMismatch(f"degrees differ: {c.degree} vs {d.degree}")


def dynamic_feedback(c: Series, d: Series) -> Series:
    """Generating series of the loop y = F_c[v · F_d[y]].

    Computed by the closed formula: mixed-compose c with the group inverse
    of (shuffle inverse of d) composed with c.  The feedback series d must
    be purely improper.
    """
    _check_dynamic_shapes(c, d)
    if not d.is_purely_improper():
        raise NotPurelyImproper("dynamic feedback needs a purely improper feedback series")
    loop_gain = compose(shuffle_inverse(d), c)
    return mixed_compose(c, delta(group_inverse(loop_gain)))


def dynamic_feedback_by_iteration(c: Series, d: Series, start: Series | None = None) -> Series:
    """Solve the dynamic-loop fixed-point equation by direct iteration.

    Independent of the closed formula (no group inverse); any starting
    series converges, and degree+1 passes are exact at truncation.
    """
    _check_dynamic_shapes(c, d)
    e = Series.zero(c.alphabet, c.outputs, c.degree) if start is None else start
    for _ in range(c.degree + 1):
        advanced = mixed_compose(c, delta(compose(d, e)))
        if advanced == e:
            break
        e = advanced
    return e


def verify_dynamic_fixed_point(c: Series, d: Series, e: Series) -> bool:
    """True when e is exactly the truncated fixed point of the dynamic loop."""
    _check_dynamic_shapes(c, d)
    if not e.same_shape(c):
        raise ShapeMismatch("candidate must have the plant's shape")
    return mixed_compose(c, delta(compose(d, e))) == e


def _check_static_shapes(c: Series, d: CommutativeSeries) -> None:
    m = c.alphabet.size - 1
    q = c.outputs
    if d.variables != q:
        raise ShapeMismatch(
            f"static feedback in {d.variables} variables must consume plant outputs {q}"
        )
    if d.outputs != m:
        raise ShapeMismatch(
            f"static feedback outputs {d.outputs} must match plant input channels {m}"
        )
    if c.degree != d.degree:
        raise ShapeMismatch(f"degrees differ: {c.degree} vs {d.degree}")


def static_feedback(c: Series, d: CommutativeSeries) -> Series:
    """Generating series of the loop y = F_c[v · f_d(y)], with f_d the
    static map generated by d.

    Computed by the closed formula: mixed-compose c with the group inverse
    of (reciprocal of d) wiener-fliess-composed with c.  Needs a proper
    plant series and a purely improper static series; the result is proper.
    """
    _check_static_shapes(c, d)
    if not c.is_proper():
        raise NotProper("static feedback needs a proper plant series")
    if not d.is_purely_improper():
        raise NotPurelyImproper("static feedback needs a purely improper static series")
    loop_gain = wiener_fliess(cauchy_inverse_comm(d), c)
    return mixed_compose(c, delta(group_inverse(loop_gain)))


def static_feedback_by_iteration(
    c: Series, d: CommutativeSeries, start: Series | None = None
) -> Series:
    """Solve the static-loop fixed-point equation by direct iteration.

    The starting series must be proper (the composition with the static
    map is only defined for proper arguments); properness is preserved."""
    _check_static_shapes(c, d)
    if not c.is_proper():
        raise NotProper("static feedback needs a proper plant series")
    e = Series.zero(c.alphabet, c.outputs, c.degree) if start is None else start
    for _ in range(c.degree + 1):
        advanced = mixed_compose(c, delta(wiener_fliess(d, e)))
        if advanced == e:
            break
        e = advanced
    return e


def verify_static_fixed_point(c: Series, d: CommutativeSeries, e: Series) -> bool:
    """True when proper e is exactly the truncated fixed point of the static loop."""
    _check_static_shapes(c, d)
    if not e.same_shape(c):
        raise ShapeMismatch("candidate must have the plant's shape")
    if not e.is_proper():
        raise NotProper("a static-loop fixed point must be proper")
    return mixed_compose(c, delta(wiener_fliess(d, e))) == e
