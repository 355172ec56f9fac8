"""Constructive ReLU approximation of spectral functions and horizon
indicators, with the matching estimation and audit tools.

Structured inputs (function specs, boundary sets, measures) are JSON strings
in the same formats the command-line tool reads and writes; arrays are NumPy.
"""

from ._core import (
    ConfigError,
    Network,
    __version__,
    approximate_erm,
    choose_width,
    disagreement_probability,
    eval_spec,
    fourier_gap_demo,
    generate_dataset,
    indicator,
    lp_error,
    risk_estimate,
    sample,
    set_max_threads,
    shattering_demo,
    spec_constant,
    synthesize_classifier,
    synthesize_shallow,
    to_pm1,
    tube_mass_estimate,
    tube_params,
)

__all__ = [
    "ConfigError",
    "Network",
    "__version__",
    "approximate_erm",
    "choose_width",
    "disagreement_probability",
    "eval_spec",
    "fourier_gap_demo",
    "generate_dataset",
    "indicator",
    "lp_error",
    "risk_estimate",
    "sample",
    "set_max_threads",
    "shattering_demo",
    "spec_constant",
    "synthesize_classifier",
    "synthesize_shallow",
    "to_pm1",
    "tube_mass_estimate",
    "tube_params",
]
