"""Truncated Chen-Fliess series algebra with multiplicative output feedback.

Exact-rational sparse series over a noncommuting alphabet, the shuffle /
Cauchy / composition-type products with their inverses, the multiplicative
dynamic and static output feedback products, and a trapezoidal simulator
that cross-validates the symbolic closed loops against direct Picard
simulation of the interconnection.
"""

from .errors import (
    BeyondTruncation,
    ConvergenceError,
    FliessError,
    HeaderMismatch,
    NotProper,
    NotPurelyImproper,
    ParseError,
    ShapeMismatch,
)
from .words import Alphabet, Word, compare_length_lex, concat, empty_word, words_up_to
from .series import DeltaSeries, Series, delta, stack, ultrametric
from .products import (
    cauchy,
    cauchy_inverse,
    shuffle,
    shuffle_inverse,
    shuffle_power,
    shuffle_words,
)
from .composition import compose, group_inverse, mixed_compose, mult_compose
from .staticmaps import (
    CommutativeSeries,
    cauchy_comm,
    cauchy_inverse_comm,
    eval_static,
    proper_part_order,
    wiener_fliess,
)
from .feedback import (
    dynamic_feedback,
    dynamic_feedback_by_iteration,
    static_feedback,
    static_feedback_by_iteration,
    verify_dynamic_fixed_point,
    verify_static_fixed_point,
)
from .simulator import (
    ComparisonReport,
    SimConfig,
    Trajectory,
    compare_loop_vs_formula,
    constant_signal,
    evaluate_fliess,
    iterated_integral,
    polynomial_signal,
    sample_signals,
    simulate_dynamic_loop,
    simulate_static_loop,
    sinusoid_signal,
    truncation_budget,
)

__all__ = [
    "Alphabet",
    "BeyondTruncation",
    "CommutativeSeries",
    "ComparisonReport",
    "ConvergenceError",
    "DeltaSeries",
    "FliessError",
    "HeaderMismatch",
    "NotProper",
    "NotPurelyImproper",
    "ParseError",
    "Series",
    "ShapeMismatch",
    "SimConfig",
    "Trajectory",
    "Word",
    "cauchy",
    "cauchy_comm",
    "cauchy_inverse",
    "cauchy_inverse_comm",
    "compare_length_lex",
    "compare_loop_vs_formula",
    "compose",
    "concat",
    "constant_signal",
    "delta",
    "dynamic_feedback",
    "dynamic_feedback_by_iteration",
    "empty_word",
    "eval_static",
    "evaluate_fliess",
    "group_inverse",
    "iterated_integral",
    "mixed_compose",
    "mult_compose",
    "polynomial_signal",
    "proper_part_order",
    "sample_signals",
    "shuffle",
    "shuffle_inverse",
    "shuffle_power",
    "shuffle_words",
    "simulate_dynamic_loop",
    "simulate_static_loop",
    "sinusoid_signal",
    "stack",
    "static_feedback",
    "static_feedback_by_iteration",
    "truncation_budget",
    "ultrametric",
    "verify_dynamic_fixed_point",
    "verify_static_fixed_point",
    "wiener_fliess",
    "words_up_to",
]

__version__ = "0.1.0"
