"""Numerical evaluation of Chen-Fliess operators and closed-loop simulation.

This is the only floating-point part of the package.  Iterated integrals
are computed by cumulative trapezoidal quadrature on a uniform grid
(second order, deterministic); an operator evaluation sums them over the
series support with rational coefficients converted to float once.  The
two feedback loops are simulated directly by Picard iteration on the loop
equation, which gives an algebra-free reference to compare the symbolic
feedback products against.

Between samples a trajectory means its piecewise-linear interpolant.
The operators involved are only locally defined, so keep time horizons
small; Picard iteration raises on non-convergence instead of returning a
best-effort answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, ShapeMismatch
from .feedback import dynamic_feedback, static_feedback
from .series import Series
from .staticmaps import CommutativeSeries, eval_static
from .words import Letters, Word


@dataclass(frozen=True)
class Trajectory:
    """A uniformly sampled vector signal.

    ``samples`` is time-major with shape (n_samples, n_channels); row k
    holds the channel values at time t0 + k*dt.  The drift channel (the
    constant 1 integrated against by the letter x0) is synthesized by the
    integrator, never stored.
    """

    t0: float
    dt: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.samples, dtype=float, copy=True)
        if arr.ndim == 1:
            arr = arr[:, np.newaxis]
        if arr.ndim != 2:
            raise ValueError("samples must be a (n_samples, n_channels) array")
        if arr.shape[0] < 2:
            raise ValueError("a trajectory needs at least 2 samples")
        if not np.all(np.isfinite(arr)):
            raise ValueError("trajectory samples must be finite")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def channels(self) -> int:
        return self.samples.shape[1]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_samples)

    def channel(self, i: int) -> np.ndarray:
        return self.samples[:, i]

    def final(self) -> np.ndarray:
        """Channel values at the last grid point."""
        return self.samples[-1].copy()

    def same_grid(self, other: "Trajectory") -> bool:
        return (
            self.n_samples == other.n_samples
            and math.isclose(self.dt, other.dt, rel_tol=1e-12, abs_tol=0.0)
            and math.isclose(self.t0, other.t0, rel_tol=1e-12, abs_tol=1e-15)
        )


@dataclass(frozen=True)
class SimConfig:
    """Grid and Picard-iteration settings for loop simulation."""

    t_final: float
    steps: int
    picard_tol: float = 1e-12
    picard_max_iters: int = 80
    degree: int = 8

    def __post_init__(self) -> None:
        if self.t_final <= 0:
            raise ValueError("t_final must be positive")
        if self.steps < 2:
            raise ValueError("steps must be at least 2")
        if self.picard_tol <= 0:
            raise ValueError("picard_tol must be positive")
        if self.picard_max_iters < 1:
            raise ValueError("picard_max_iters must be positive")


Signal = Callable[[float], float]


def constant_signal(value: float) -> Signal:
    return lambda t: value


def polynomial_signal(coeffs: Sequence[float]) -> Signal:
    """c0 + c1*t + c2*t^2 + ..."""
    cs = list(coeffs)

    def f(t: float) -> float:
        acc = 0.0
        for c in reversed(cs):
            acc = acc * t + c
        return acc

    return f


def sinusoid_signal(amplitude: float, omega: float) -> Signal:
    """amplitude * sin(omega * t), omega in rad/s."""
    return lambda t: amplitude * math.sin(omega * t)


def sample_signals(signals: Sequence[Signal], t_final: float, steps: int, t0: float = 0.0) -> Trajectory:
    """Sample the given per-channel signals on a uniform grid with ``steps``
    integration intervals (steps + 1 samples)."""
    dt = (t_final - t0) / steps
    times = t0 + dt * np.arange(steps + 1)
    samples = np.column_stack([np.array([f(t) for t in times], dtype=float) for f in signals])
    return Trajectory(t0, dt, samples)


def _cumtrapz(values: np.ndarray, dt: float) -> np.ndarray:
    """Cumulative trapezoidal integral starting at 0."""
    out = np.empty_like(values)
    out[0] = 0.0
    np.cumsum((values[1:] + values[:-1]) * (0.5 * dt), out=out[1:])
    return out


def _letter_channel(u: Trajectory, letter: int) -> np.ndarray:
    if letter == 0:
        return np.ones(u.n_samples)
    if letter > u.channels:
        raise ShapeMismatch(f"letter x{letter} has no input channel (trajectory has {u.channels})")
    return u.channel(letter - 1)


def _iterated_integral(letters: Letters, u: Trajectory, cache: dict[Letters, np.ndarray]) -> np.ndarray:
    found = cache.get(letters)
    if found is not None:
        return found
    if not letters:
        result = np.ones(u.n_samples)
    else:
        inner = _iterated_integral(letters[1:], u, cache)
        result = _cumtrapz(_letter_channel(u, letters[0]) * inner, u.dt)
    cache[letters] = result
    return result


def iterated_integral(w: Word | Letters, u: Trajectory) -> Trajectory:
    """The iterated integral of the word against the trajectory, as a scalar
    trajectory on the same grid.

    The empty word gives the constant 1; a word x_i·w' integrates channel i
    times the integral of w', with channel 0 the synthesized constant drift.
    Each layer is one cumulative trapezoidal pass, applied right to left.
    """
    letters = w.letters if isinstance(w, Word) else tuple(int(x) for x in w)
    values = _iterated_integral(letters, u, {})
    return Trajectory(u.t0, u.dt, values)


def evaluate_fliess(c: Series, u: Trajectory) -> Trajectory:
    """Evaluate the truncated operator of c on an input trajectory.

    Sums coefficient-weighted iterated integrals over the support, sharing
    the integral of every word suffix across the whole support.  Rational
    coefficients become floats here, once each.
    """
    m = c.alphabet.size - 1
    if u.channels != m:
        raise ShapeMismatch(f"series expects {m} input channels, trajectory has {u.channels}")
    out = np.zeros((u.n_samples, c.outputs))
    cache: dict[Letters, np.ndarray] = {}
    for (letters, component), coeff in c.raw_items():
        out[:, component] += float(coeff) * _iterated_integral(letters, u, cache)
    return Trajectory(u.t0, u.dt, out)


def _picard(
    first_output_channels: int,
    u_of_y: Callable[[Trajectory], Trajectory],
    apply_plant: Callable[[Trajectory], Trajectory],
    grid: Trajectory,
    cfg: SimConfig,
) -> tuple[Trajectory, int]:
    """Iterate y <- plant(u(y)) from y = 0 until the sup-norm change drops
    below the tolerance; raises on non-convergence."""
    y = Trajectory(grid.t0, grid.dt, np.zeros((grid.n_samples, first_output_channels)))
    for iteration in range(1, cfg.picard_max_iters + 1):
        advanced = apply_plant(u_of_y(y))
        change = float(np.max(np.abs(advanced.samples - y.samples)))
        y = advanced
        if change < cfg.picard_tol:
            return y, iteration
    raise ConvergenceError(
        f"Picard iteration did not converge within {cfg.picard_max_iters} passes "
        f"(last change {change:.3e}); try a shorter time horizon"
    )


def simulate_dynamic_loop(c: Series, d: Series, v: Trajectory, cfg: SimConfig) -> Trajectory:
    """Simulate y = F_c[v · F_d[y]] by Picard iteration from y = 0.

    The plant input is the external input times the feedback operator's
    output, channel by channel on the grid.
    """
    m = c.alphabet.size - 1
    q = c.outputs
    if d.alphabet.size != q + 1 or d.outputs != m:
        raise ShapeMismatch(
            f"loop shapes: plant {m}->{q}, feedback must be {q}->{m}, "
            f"got {d.alphabet.size - 1}->{d.outputs}"
        )
    if v.channels != m:
        raise ShapeMismatch(f"external input needs {m} channels, got {v.channels}")

    def u_of_y(y: Trajectory) -> Trajectory:
        w = evaluate_fliess(d, y)
        return Trajectory(v.t0, v.dt, v.samples * w.samples)

    return _picard(q, u_of_y, lambda u: evaluate_fliess(c, u), v, cfg)[0]


def simulate_static_loop(c: Series, d: CommutativeSeries, v: Trajectory, cfg: SimConfig) -> Trajectory:
    """Simulate y = F_c[v · f_d(y)] by Picard iteration from y = 0, with the
    static map evaluated sample by sample."""
    m = c.alphabet.size - 1
    q = c.outputs
    if d.variables != q or d.outputs != m:
        raise ShapeMismatch(
            f"loop shapes: plant {m}->{q}, static map must be {q}->{m}, "
            f"got {d.variables}->{d.outputs}"
        )
    if v.channels != m:
        raise ShapeMismatch(f"external input needs {m} channels, got {v.channels}")
    coeff_items = [(exps, component, float(coeff)) for (exps, component), coeff in d.raw_items()]

    def static_map(y_row: np.ndarray) -> np.ndarray:
        out = np.zeros(d.outputs)
        for exps, component, coeff in coeff_items:
            term = coeff
            for zi, e in zip(y_row, exps):
                if e:
                    term *= zi**e
            out[component] += term
        return out

    def u_of_y(y: Trajectory) -> Trajectory:
        gain = np.array([static_map(row) for row in y.samples])
        return Trajectory(v.t0, v.dt, v.samples * gain)

    return _picard(q, u_of_y, lambda u: evaluate_fliess(c, u), v, cfg)[0]


def truncation_budget(c: Series, t_final: float, input_bound: float = 1.0) -> float:
    """Crude scale estimate C*T^(degree+1) for the first omitted degree of
    an operator evaluation.

    A word of length k contributes at most (U*t)^k / k! for inputs bounded
    by U; the coefficient mass of the omitted level is extrapolated from
    the growth of the stored per-level l1 masses.  Order-of-magnitude
    diagnostic only.
    """
    n = c.degree
    levels = [0.0] * (n + 1)
    for (letters, _), coeff in c.raw_items():
        levels[len(letters)] += abs(float(coeff))
    top = levels[n]
    below = levels[n - 1] if n >= 1 else 0.0
    if top > 0.0 and below > 0.0:
        mass = top * (top / below)
    elif top > 0.0:
        mass = top
    else:
        mass = max(levels + [1.0])
    u = max(1.0, float(input_bound))
    return mass * u ** (n + 1) / math.factorial(n + 1) * float(t_final) ** (n + 1)


@dataclass(frozen=True)
class ComparisonReport:
    """Outcome of checking a simulated loop against its symbolic product."""

    kind: str
    max_abs_deviation: tuple[float, ...]
    truncation_budget: float
    simulated: Trajectory = field(repr=False)
    predicted: Trajectory = field(repr=False)

    @property
    def worst(self) -> float:
        return max(self.max_abs_deviation)


def compare_loop_vs_formula(
    kind: str,
    c: Series,
    d: Series | CommutativeSeries,
    v: Trajectory,
    cfg: SimConfig,
) -> ComparisonReport:
    """Simulate the requested loop and evaluate the algebraic feedback
    product on the same input; report the per-output maximum deviation over
    the grid plus the truncation-error budget of the symbolic path."""
    if kind == "dynamic":
        if not isinstance(d, Series):
            raise ShapeMismatch("dynamic comparison needs a feedback series, not a static map")
        simulated = simulate_dynamic_loop(c, d, v, cfg)
        closed_loop = dynamic_feedback(c, d)
    elif kind == "static":
        if not isinstance(d, CommutativeSeries):
            raise ShapeMismatch("static comparison needs a commutative series")
        simulated = simulate_static_loop(c, d, v, cfg)
        closed_loop = static_feedback(c, d)
    else:
        raise ValueError(f"unknown comparison kind {kind!r}")
    predicted = evaluate_fliess(closed_loop, v)
    deviation = np.max(np.abs(simulated.samples - predicted.samples), axis=0)
    bound = float(np.max(np.abs(v.samples))) if v.samples.size else 1.0
    budget = truncation_budget(closed_loop, cfg.t_final, bound)
    return ComparisonReport(
        kind=kind,
        max_abs_deviation=tuple(float(x) for x in deviation),
        truncation_budget=budget,
        simulated=simulated,
        predicted=predicted,
    )
