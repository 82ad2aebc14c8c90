"""Parsing and rendering for series, commutative series, and trajectories.

Series text format, one term per line, canonical order (component, then
length-lex word), with an optional self-describing header::

    alphabet 2 outputs 1 degree 3
    3/2 0 x0 x1
    -1 0 e

Commutative series use ``variables`` instead of ``alphabet`` and an
exponent-vector literal in place of the word::

    variables 2 outputs 1 degree 3
    3 0 [2,0]

The header may be omitted, in which case the shape is inferred from the
terms and the truncation degree must be supplied by the caller.  Rendering
always emits the header, so render/parse round-trips are exact, shape
included.  JSON carries the same data with coefficients as strings to keep
rationals exact.  Trajectory CSV uses a ``t,ch0,ch1,...`` header and 17
significant digits, which round-trips binary64 exactly.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

import numpy as np

from .errors import HeaderMismatch, ParseError
from .simulator import Signal, Trajectory, constant_signal, polynomial_signal, sinusoid_signal
from .staticmaps import CommutativeSeries
from .series import Series
from .words import Alphabet, render_letters

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_LETTER_RE = re.compile(r"^x(\d+)$")
_EXPONENTS_RE = re.compile(r"^\[(\d+(,\d+)*)?\]$")


def _tokens(line: str) -> list[tuple[str, int]]:
    """(token, 1-based column) pairs for one line."""
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _significant_lines(text: str) -> list[tuple[int, list[tuple[str, int]]]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((lineno, _tokens(line)))
    return out


def _parse_header(tokens: list[tuple[str, int]], lineno: int, keys: tuple[str, ...]) -> dict[str, int]:
    header: dict[str, int] = {}
    if len(tokens) % 2 != 0:
        raise ParseError("header must be keyword/value pairs", lineno, tokens[-1][1])
    for (key, kcol), (value, vcol) in zip(tokens[::2], tokens[1::2]):
        if key not in keys:
            raise ParseError(f"unknown header keyword {key!r}", lineno, kcol)
        if key in header:
            raise ParseError(f"duplicate header keyword {key!r}", lineno, kcol)
        if not value.isdigit():
            raise ParseError(f"header value for {key!r} must be a nonnegative integer", lineno, vcol)
        header[key] = int(value)
    return header


def _parse_rational(token: str, lineno: int, column: int) -> Fraction:
    if not _RATIONAL_RE.match(token):
        raise ParseError(f"expected a rational coefficient, got {token!r}", lineno, column)
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {token!r}", lineno, column) from None


def _parse_component(token: str, lineno: int, column: int) -> int:
    if not token.isdigit():
        raise ParseError(f"expected a component index, got {token!r}", lineno, column)
    return int(token)


def _resolve(declared: int | None, supplied: int | None, name: str) -> int | None:
    if declared is not None and supplied is not None and declared != supplied:
        raise HeaderMismatch(f"{name} is {declared} in the header but {supplied} was requested")
    return declared if declared is not None else supplied


def parse_series(
    text: str,
    *,
    degree: int | None = None,
    alphabet_size: int | None = None,
    outputs: int | None = None,
    min_alphabet_size: int | None = None,
    min_outputs: int | None = None,
) -> Series:
    """Parse the series text format.

    Shape information comes from the header when present; keyword arguments
    must agree with it.  Without a header the alphabet and output count are
    inferred from the terms, but the degree must be supplied.  The ``min_*``
    hints only lift inferred values (callers deriving shapes from context);
    declared shapes always win over hints.
    """
    lines = _significant_lines(text)
    header: dict[str, int] = {}
    if lines and lines[0][1][0][0] in ("alphabet", "outputs", "degree"):
        lineno, tokens = lines.pop(0)
        header = _parse_header(tokens, lineno, ("alphabet", "outputs", "degree"))
    size = _resolve(header.get("alphabet"), alphabet_size, "alphabet size")
    n_outputs = _resolve(header.get("outputs"), outputs, "output count")
    n_degree = _resolve(header.get("degree"), degree, "degree")
    if n_degree is None:
        raise ParseError("no truncation degree: supply one or add it to the header")

    terms: list[tuple[tuple[int, ...], int, Fraction, int, int]] = []
    for lineno, tokens in lines:
        if len(tokens) < 3:
            column = tokens[-1][1] if tokens else 1
            raise ParseError("a term needs a coefficient, a component, and a word", lineno, column)
        coeff = _parse_rational(tokens[0][0], lineno, tokens[0][1])
        component = _parse_component(tokens[1][0], lineno, tokens[1][1])
        word_tokens = tokens[2:]
        if len(word_tokens) == 1 and word_tokens[0][0] == "e":
            letters: tuple[int, ...] = ()
        else:
            parsed = []
            for token, column in word_tokens:
                m = _LETTER_RE.match(token)
                if not m:
                    raise ParseError(f"expected a letter like x0, got {token!r}", lineno, column)
                parsed.append(int(m.group(1)))
            letters = tuple(parsed)
        terms.append((letters, component, coeff, lineno, tokens[0][1]))

    if size is None:
        size = max([x + 1 for letters, *_ in terms for x in letters], default=1)
        if min_alphabet_size is not None:
            size = max(size, min_alphabet_size)
    if n_outputs is None:
        n_outputs = max([component + 1 for _, component, *_ in terms], default=1)
        if min_outputs is not None:
            n_outputs = max(n_outputs, min_outputs)

    for letters, component, _, lineno, column in terms:
        if len(letters) > n_degree:
            raise HeaderMismatch(
                f"word of length {len(letters)} exceeds the declared degree {n_degree}", lineno, column
            )
        if any(x >= size for x in letters):
            raise HeaderMismatch(
                f"letter outside the declared alphabet of size {size}", lineno, column
            )
        if component >= n_outputs:
            raise HeaderMismatch(
                f"component {component} outside the declared {n_outputs} outputs", lineno, column
            )
    return Series(Alphabet(size), n_outputs, n_degree, [(w, c, f) for w, c, f, *_ in terms])


def render_series(s: Series, include_header: bool = True) -> str:
    lines = []
    if include_header:
        lines.append(f"alphabet {s.alphabet.size} outputs {s.outputs} degree {s.degree}")
    for word, component, coeff in s.terms():
        lines.append(f"{coeff} {component} {word}")
    return "\n".join(lines) + "\n"


def parse_comm_series(
    text: str,
    *,
    degree: int | None = None,
    variables: int | None = None,
    outputs: int | None = None,
    min_outputs: int | None = None,
) -> CommutativeSeries:
    """Parse the commutative series text format (exponent-vector terms).

    ``min_outputs`` only lifts an inferred output count, as in
    :func:`parse_series`.
    """
    lines = _significant_lines(text)
    header: dict[str, int] = {}
    if lines and lines[0][1][0][0] in ("variables", "outputs", "degree"):
        lineno, tokens = lines.pop(0)
        header = _parse_header(tokens, lineno, ("variables", "outputs", "degree"))
    n_variables = _resolve(header.get("variables"), variables, "variable count")
    n_outputs = _resolve(header.get("outputs"), outputs, "output count")
    n_degree = _resolve(header.get("degree"), degree, "degree")
    if n_degree is None:
        raise ParseError("no truncation degree: supply one or add it to the header")

    terms: list[tuple[tuple[int, ...], int, Fraction, int, int]] = []
    for lineno, tokens in lines:
        if len(tokens) != 3:
            column = tokens[-1][1] if tokens else 1
            raise ParseError(
                "a term needs a coefficient, a component, and an exponent vector", lineno, column
            )
        coeff = _parse_rational(tokens[0][0], lineno, tokens[0][1])
        component = _parse_component(tokens[1][0], lineno, tokens[1][1])
        exp_token, exp_column = tokens[2]
        if not _EXPONENTS_RE.match(exp_token):
            raise ParseError(f"expected an exponent vector like [2,0,1], got {exp_token!r}", lineno, exp_column)
        body = exp_token[1:-1]
        exponents = tuple(int(x) for x in body.split(",")) if body else ()
        terms.append((exponents, component, coeff, lineno, exp_column))

    if n_variables is None:
        if not terms:
            raise ParseError("cannot infer the variable count from an empty series")
        n_variables = len(terms[0][0])
    if n_outputs is None:
        n_outputs = max([component + 1 for _, component, *_ in terms], default=1)
        if min_outputs is not None:
            n_outputs = max(n_outputs, min_outputs)

    for exponents, component, _, lineno, column in terms:
        if len(exponents) != n_variables:
            raise HeaderMismatch(
                f"exponent vector of length {len(exponents)} does not match {n_variables} variables",
                lineno,
                column,
            )
        if sum(exponents) > n_degree:
            raise HeaderMismatch(
                f"total degree {sum(exponents)} exceeds the declared degree {n_degree}", lineno, column
            )
        if component >= n_outputs:
            raise HeaderMismatch(
                f"component {component} outside the declared {n_outputs} outputs", lineno, column
            )
    return CommutativeSeries(n_variables, n_outputs, n_degree, [(e, c, f) for e, c, f, *_ in terms])


def render_comm_series(d: CommutativeSeries, include_header: bool = True) -> str:
    lines = []
    if include_header:
        lines.append(f"variables {d.variables} outputs {d.outputs} degree {d.degree}")
    for exponents, component, coeff in d.terms():
        body = ",".join(str(e) for e in exponents)
        lines.append(f"{coeff} {component} [{body}]")
    return "\n".join(lines) + "\n"


# -- JSON ------------------------------------------------------------------


def series_to_json(s: Series) -> dict:
    return {
        "alphabet": s.alphabet.size,
        "outputs": s.outputs,
        "degree": s.degree,
        "terms": [
            {"coeff": str(coeff), "component": component, "word": list(word.letters)}
            for word, component, coeff in s.terms()
        ],
    }


def _json_int(obj: dict, key: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"JSON field {key!r} must be an integer")
    return value


def series_from_json(obj: dict) -> Series:
    if not isinstance(obj, dict):
        raise ParseError("JSON series must be an object")
    size = _json_int(obj, "alphabet")
    outputs = _json_int(obj, "outputs")
    degree = _json_int(obj, "degree")
    raw_terms = obj.get("terms", [])
    if not isinstance(raw_terms, list):
        raise ParseError("JSON field 'terms' must be a list")
    terms = []
    for entry in raw_terms:
        if not isinstance(entry, dict):
            raise ParseError("each JSON term must be an object")
        coeff = entry.get("coeff")
        if not isinstance(coeff, str) or not _RATIONAL_RE.match(coeff):
            raise ParseError(f"JSON coefficient must be a rational string, got {coeff!r}")
        word = entry.get("word")
        if not isinstance(word, list) or not all(isinstance(x, int) for x in word):
            raise ParseError("JSON word must be a list of letter indices")
        terms.append((tuple(word), _json_int(entry, "component"), Fraction(coeff)))
    try:
        return Series(Alphabet(size), outputs, degree, terms)
    except ValueError as exc:
        raise HeaderMismatch(str(exc)) from None


def comm_series_to_json(d: CommutativeSeries) -> dict:
    return {
        "variables": d.variables,
        "outputs": d.outputs,
        "degree": d.degree,
        "terms": [
            {"coeff": str(coeff), "component": component, "exponents": list(exponents)}
            for exponents, component, coeff in d.terms()
        ],
    }


def comm_series_from_json(obj: dict) -> CommutativeSeries:
    if not isinstance(obj, dict):
        raise ParseError("JSON commutative series must be an object")
    variables = _json_int(obj, "variables")
    outputs = _json_int(obj, "outputs")
    degree = _json_int(obj, "degree")
    raw_terms = obj.get("terms", [])
    if not isinstance(raw_terms, list):
        raise ParseError("JSON field 'terms' must be a list")
    terms = []
    for entry in raw_terms:
        if not isinstance(entry, dict):
            raise ParseError("each JSON term must be an object")
        coeff = entry.get("coeff")
        if not isinstance(coeff, str) or not _RATIONAL_RE.match(coeff):
            raise ParseError(f"JSON coefficient must be a rational string, got {coeff!r}")
        exponents = entry.get("exponents")
        if not isinstance(exponents, list) or not all(isinstance(x, int) for x in exponents):
            raise ParseError("JSON exponents must be a list of integers")
        terms.append((tuple(exponents), _json_int(entry, "component"), Fraction(coeff)))
    try:
        return CommutativeSeries(variables, outputs, degree, terms)
    except ValueError as exc:
        raise HeaderMismatch(str(exc)) from None


def render_series_json(s: Series) -> str:
    return json.dumps(series_to_json(s), indent=2) + "\n"


def parse_series_json(text: str) -> Series:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return series_from_json(obj)


def render_comm_series_json(d: CommutativeSeries) -> str:
    return json.dumps(comm_series_to_json(d), indent=2) + "\n"


def parse_comm_series_json(text: str) -> CommutativeSeries:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return comm_series_from_json(obj)


# -- trajectories ------------------------------------------------------------


def trajectory_to_csv(tr: Trajectory) -> str:
    header = "t," + ",".join(f"ch{i}" for i in range(tr.channels))
    lines = [header]
    times = tr.times
    for k in range(tr.n_samples):
        row = [f"{times[k]:.17g}"] + [f"{value:.17g}" for value in tr.samples[k]]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def trajectory_from_csv(text: str) -> Trajectory:
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) < 3:
        raise ParseError("trajectory CSV needs a header and at least 2 rows")
    header = lines[0].split(",")
    if header[0].strip() != "t":
        raise ParseError("trajectory CSV header must start with 't'", 1, 1)
    channels = len(header) - 1
    if channels < 1:
        raise ParseError("trajectory CSV needs at least one channel column", 1, 1)
    times = []
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != channels + 1:
            raise ParseError(f"expected {channels + 1} columns, got {len(cells)}", lineno, 1)
        try:
            values = [float(cell) for cell in cells]
        except ValueError:
            raise ParseError("non-numeric cell", lineno, 1) from None
        times.append(values[0])
        rows.append(values[1:])
    dt = times[1] - times[0]
    if dt <= 0:
        raise ParseError("time column must be strictly increasing", 2, 1)
    return Trajectory(times[0], dt, np.array(rows))


# -- input signal mini-language ----------------------------------------------


def parse_signal_spec(spec: str) -> list[Signal]:
    """Per-channel signal specs, semicolon-separated.

    ``const:<v>`` | ``poly:<c0,c1,...>`` | ``sin:<amp>,<omega>`` (omega in
    rad/s).  Example: ``const:1;sin:0.5,2`` describes two channels.
    """
    signals: list[Signal] = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if ":" not in chunk:
            raise ParseError(f"signal spec {chunk!r} needs the form kind:args")
        kind, _, args = chunk.partition(":")
        try:
            values = [float(x) for x in args.split(",")] if args else []
        except ValueError:
            raise ParseError(f"non-numeric argument in signal spec {chunk!r}") from None
        if kind == "const":
            if len(values) != 1:
                raise ParseError(f"const takes one value, got {chunk!r}")
            signals.append(constant_signal(values[0]))
        elif kind == "poly":
            if not values:
                raise ParseError(f"poly needs at least one coefficient, got {chunk!r}")
            signals.append(polynomial_signal(values))
        elif kind == "sin":
            if len(values) != 2:
                raise ParseError(f"sin takes amplitude and angular frequency, got {chunk!r}")
            signals.append(sinusoid_signal(values[0], values[1]))
        else:
            raise ParseError(f"unknown signal kind {kind!r}")
    if not signals:
        raise ParseError("empty signal spec")
    return signals
