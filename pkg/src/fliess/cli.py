"""Command-line interface.

Every algebra command takes a mandatory ``--degree`` so truncation is never
implicit; files whose headers declare a different degree are rejected
rather than silently re-truncated.  Results go to stdout or ``--out`` and
are byte-identical across runs on identical inputs.

Exit codes: 0 success, 1 failed verification, 2 parse error,
3 precondition violation, 4 Picard non-convergence, 5 internal failure.
Diagnostics carry the stable error code of the failure class.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import composition, feedback, products, simulator
from .errors import (
    BeyondTruncation,
    ConvergenceError,
    FliessError,
    NotProper,
    NotPurelyImproper,
    ParseError,
    ShapeMismatch,
)
from .formats import (
    parse_comm_series,
    parse_comm_series_json,
    parse_series,
    parse_series_json,
    parse_signal_spec,
    render_series,
    render_series_json,
    trajectory_to_csv,
)
from .series import Series, delta
from .simulator import SimConfig, compare_loop_vs_formula, evaluate_fliess, sample_signals
from .staticmaps import wiener_fliess

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_NO_CONVERGENCE = 4
EXIT_INTERNAL = 5


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load_series(
    path: str,
    degree: int,
    min_alphabet_size: int | None = None,
    min_outputs: int | None = None,
) -> Series:
    text = _read(path)
    if path.endswith(".json"):
        s = parse_series_json(text)
        if s.degree != degree:
            raise ShapeMismatch(f"{path} has degree {s.degree}, requested {degree}")
        return s
    return parse_series(
        text, degree=degree, min_alphabet_size=min_alphabet_size, min_outputs=min_outputs
    )


def _load_comm_series(path: str, degree: int):
    text = _read(path)
    if path.endswith(".json"):
        d = parse_comm_series_json(text)
        if d.degree != degree:
            raise ShapeMismatch(f"{path} has degree {d.degree}, requested {degree}")
        return d
    return parse_comm_series(text, degree=degree)


def _reload_lifted(path: str, degree: int, s: Series, size: int, outs: int | None) -> Series:
    """Reload a text operand whose inferred shape fell short of the target.

    Headers are authoritative, so a declared smaller shape survives the
    reload and genuine conflicts still surface in the operation itself.
    """
    if s.alphabet.size < size or (outs is not None and s.outputs < outs):
        return _load_series(path, degree, min_alphabet_size=size, min_outputs=outs)
    return s


def _load_dynamic_pair(plant_path: str, controller_path: str, degree: int) -> tuple[Series, Series]:
    """Load a plant/controller pair, deriving each header-less alphabet from
    the partner's output count (plant consumes controller outputs and
    vice versa)."""
    plant = _load_series(plant_path, degree)
    controller = _load_series(controller_path, degree)
    if plant.alphabet.size < controller.outputs + 1:
        plant = _load_series(plant_path, degree, min_alphabet_size=controller.outputs + 1)
    if controller.alphabet.size < plant.outputs + 1:
        controller = _load_series(controller_path, degree, min_alphabet_size=plant.outputs + 1)
    return plant, controller


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_series(s: Series, args) -> None:
    text = render_series_json(s) if args.json else render_series(s)
    _emit(text, args.out)


def _sampled_input(args, channels: int):
    signals = parse_signal_spec(args.input)
    if len(signals) != channels:
        raise ShapeMismatch(f"input spec has {len(signals)} channels, expected {channels}")
    return sample_signals(signals, args.tfinal, args.steps)


def _add_common_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the result to this file instead of stdout")
    p.add_argument("--json", action="store_true", help="emit JSON instead of the text format")


def _add_degree(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degree", type=int, required=True, help="truncation degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fliess",
        description="Truncated Chen-Fliess series algebra, multiplicative feedback products, "
        "and cross-validating simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
        ("shuffle", "shuffle product of two series"),
        ("cauchy", "Cauchy product of two series"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("left")
        p.add_argument("right")
        _add_degree(p)
        _add_common_output(p)

    for name, help_text in [
        ("shuffle-inv", "shuffle inverse of a purely improper series"),
        ("cauchy-inv", "Cauchy inverse of a purely improper series"),
        ("group-inv", "feedback-group inverse of a purely improper series"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("operand")
        _add_degree(p)
        _add_common_output(p)

    p = sub.add_parser("compose", help="composition product (cascade)")
    p.add_argument("outer")
    p.add_argument("inner")
    _add_degree(p)
    _add_common_output(p)

    p = sub.add_parser("mixed-compose", help="multiplicative mixed composition; the right operand is the inner series of its delta tag")
    p.add_argument("left")
    p.add_argument("right")
    _add_degree(p)
    _add_common_output(p)

    p = sub.add_parser("mult-compose", help="multiplicative composition of two delta series (files hold the inner series)")
    p.add_argument("left")
    p.add_argument("right")
    _add_degree(p)
    _add_common_output(p)

    p = sub.add_parser("wf-compose", help="Wiener-Fliess composition of a commutative series with a proper series")
    p.add_argument("static", help="commutative series file")
    p.add_argument("series", help="proper series file")
    _add_degree(p)
    _add_common_output(p)

    p = sub.add_parser("dyn-feedback", help="multiplicative dynamic feedback product")
    p.add_argument("--plant", required=True)
    p.add_argument("--controller", required=True, help="feedback-path series file")
    _add_degree(p)
    _add_common_output(p)

    p = sub.add_parser("static-feedback", help="multiplicative static feedback product")
    p.add_argument("--plant", required=True)
    p.add_argument("--controller", required=True, help="commutative series file")
    _add_degree(p)
    _add_common_output(p)

    p = sub.add_parser("verify", help="check a candidate closed-loop series against the loop fixed-point equation")
    p.add_argument("--kind", choices=["dynamic", "static"], required=True)
    p.add_argument("--plant", required=True)
    p.add_argument("--controller", required=True)
    p.add_argument("--candidate", required=True)
    _add_degree(p)

    p = sub.add_parser("simulate", help="evaluate an operator on an input signal, or simulate a feedback loop")
    p.add_argument("--kind", choices=["dynamic", "static"], help="loop kind; omit for open-loop evaluation")
    p.add_argument("--series", help="series file for open-loop evaluation")
    p.add_argument("--plant")
    p.add_argument("--controller")
    p.add_argument("--input", required=True, help="signal spec, e.g. 'const:1' or 'const:1;sin:0.5,2'")
    p.add_argument("--tfinal", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--picard-tol", type=float, default=1e-12)
    p.add_argument("--picard-max-iters", type=int, default=80)
    _add_degree(p)
    p.add_argument("--out", help="write the trajectory CSV to this file instead of stdout")

    p = sub.add_parser("compare", help="simulate a loop and report its deviation from the symbolic feedback product")
    p.add_argument("--kind", choices=["dynamic", "static"], required=True)
    p.add_argument("--plant", required=True)
    p.add_argument("--controller", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--tfinal", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--picard-tol", type=float, default=1e-12)
    p.add_argument("--picard-max-iters", type=int, default=80)
    _add_degree(p)
    p.add_argument("--out")

    return parser


def _run_binary(args) -> int:
    left = _load_series(args.left, args.degree)
    right = _load_series(args.right, args.degree)
    sizes = (left.alphabet.size, right.alphabet.size)
    if args.command in ("shuffle", "cauchy"):
        outs = max(left.outputs, right.outputs)
        size = max(sizes)
        left = _reload_lifted(args.left, args.degree, left, size, outs)
        right = _reload_lifted(args.right, args.degree, right, size, outs)
        op = products.shuffle if args.command == "shuffle" else products.cauchy
        result = op(left, right)
    elif args.command == "mixed-compose":
        size = max(*sizes, right.outputs + 1)
        left = _reload_lifted(args.left, args.degree, left, size, None)
        right = _reload_lifted(args.right, args.degree, right, size, size - 1)
        result = composition.mixed_compose(left, delta(right))
    else:  # mult-compose: both operands live in the delta group
        outs = max(left.outputs, right.outputs)
        size = max(*sizes, outs + 1)
        left = _reload_lifted(args.left, args.degree, left, size, size - 1)
        right = _reload_lifted(args.right, args.degree, right, size, size - 1)
        result = composition.mult_compose(delta(left), delta(right)).inner
    _emit_series(result, args)
    return EXIT_OK


def _run_unary(args) -> int:
    operand = _load_series(args.operand, args.degree)
    if args.command == "shuffle-inv":
        result = products.shuffle_inverse(operand)
    elif args.command == "cauchy-inv":
        result = products.cauchy_inverse(operand)
    else:
        operand = _reload_lifted(
            args.operand, args.degree, operand, operand.outputs + 1, None
        )
        result = composition.group_inverse(operand)
    _emit_series(result, args)
    return EXIT_OK


def _run_compose(args) -> int:
    inner = _load_series(args.inner, args.degree)
    # the outer operand's alphabet is pinned by the inner outputs
    outer = _load_series(args.outer, args.degree, min_alphabet_size=inner.outputs + 1)
    _emit_series(composition.compose(outer, inner), args)
    return EXIT_OK


def _run_wf_compose(args) -> int:
    static = _load_comm_series(args.static, args.degree)
    series = _load_series(args.series, args.degree)
    _emit_series(wiener_fliess(static, series), args)
    return EXIT_OK


def _load_static_pair(plant_path: str, controller_path: str, degree: int):
    controller = _load_comm_series(controller_path, degree)
    plant = _load_series(plant_path, degree, min_alphabet_size=controller.outputs + 1)
    return plant, controller


def _run_feedback(args) -> int:
    if args.command == "dyn-feedback":
        plant, controller = _load_dynamic_pair(args.plant, args.controller, args.degree)
        result = feedback.dynamic_feedback(plant, controller)
    else:
        plant, controller = _load_static_pair(args.plant, args.controller, args.degree)
        result = feedback.static_feedback(plant, controller)
    _emit_series(result, args)
    return EXIT_OK


def _run_verify(args) -> int:
    if args.kind == "dynamic":
        plant, controller = _load_dynamic_pair(args.plant, args.controller, args.degree)
    else:
        plant, controller = _load_static_pair(args.plant, args.controller, args.degree)
    candidate = _load_series(
        args.candidate, args.degree, min_alphabet_size=plant.alphabet.size, min_outputs=plant.outputs
    )
    if args.kind == "dynamic":
        ok = feedback.verify_dynamic_fixed_point(plant, controller, candidate)
    else:
        ok = feedback.verify_static_fixed_point(plant, controller, candidate)
    sys.stdout.write(f"fixed-point{'' if ok else ' NOT'} verified ({args.kind})\n")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _sim_config(args) -> SimConfig:
    return SimConfig(
        t_final=args.tfinal,
        steps=args.steps,
        picard_tol=args.picard_tol,
        picard_max_iters=args.picard_max_iters,
        degree=args.degree,
    )


def _run_simulate(args) -> int:
    cfg = _sim_config(args)
    if args.kind is None:
        if not args.series:
            raise ShapeMismatch("open-loop simulation needs --series")
        channels = len(parse_signal_spec(args.input))
        series = _load_series(args.series, args.degree, min_alphabet_size=channels + 1)
        v = _sampled_input(args, series.alphabet.size - 1)
        y = evaluate_fliess(series, v)
    else:
        if not (args.plant and args.controller):
            raise ShapeMismatch("loop simulation needs --plant and --controller")
        if args.kind == "dynamic":
            plant, controller = _load_dynamic_pair(args.plant, args.controller, args.degree)
            v = _sampled_input(args, plant.alphabet.size - 1)
            y = simulator.simulate_dynamic_loop(plant, controller, v, cfg)
        else:
            plant, controller = _load_static_pair(args.plant, args.controller, args.degree)
            v = _sampled_input(args, plant.alphabet.size - 1)
            y = simulator.simulate_static_loop(plant, controller, v, cfg)
    _emit(trajectory_to_csv(y), args.out)
    return EXIT_OK


def _run_compare(args) -> int:
    cfg = _sim_config(args)
    if args.kind == "dynamic":
        plant, controller = _load_dynamic_pair(args.plant, args.controller, args.degree)
    else:
        plant, controller = _load_static_pair(args.plant, args.controller, args.degree)
    v = _sampled_input(args, plant.alphabet.size - 1)
    report = compare_loop_vs_formula(args.kind, plant, controller, v, cfg)
    lines = [
        f"kind: {report.kind}",
        f"t_final: {cfg.t_final:.17g}",
        f"steps: {cfg.steps}",
        f"degree: {cfg.degree}",
    ]
    for i, deviation in enumerate(report.max_abs_deviation):
        lines.append(f"max_abs_deviation[{i}]: {deviation:.17g}")
    lines.append(f"truncation_budget: {report.truncation_budget:.17g}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


_HANDLERS = {
    "shuffle": _run_binary,
    "cauchy": _run_binary,
    "mixed-compose": _run_binary,
    "mult-compose": _run_binary,
    "shuffle-inv": _run_unary,
    "cauchy-inv": _run_unary,
    "group-inv": _run_unary,
    "compose": _run_compose,
    "wf-compose": _run_wf_compose,
    "dyn-feedback": _run_feedback,
    "static-feedback": _run_feedback,
    "verify": _run_verify,
    "simulate": _run_simulate,
    "compare": _run_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        sys.stderr.write(f"fliess: error {exc.code}: {exc}\n")
        return EXIT_PARSE
    except (ShapeMismatch, NotPurelyImproper, NotProper, BeyondTruncation) as exc:
        sys.stderr.write(f"fliess: error {exc.code}: {exc}\n")
        return EXIT_PRECONDITION
    except ConvergenceError as exc:
        sys.stderr.write(f"fliess: error {exc.code}: {exc}\n")
        return EXIT_NO_CONVERGENCE
    except FliessError as exc:
        sys.stderr.write(f"fliess: error {exc.code}: {exc}\n")
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"fliess: error E_INTERNAL: {exc}\n")
        return EXIT_INTERNAL


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
