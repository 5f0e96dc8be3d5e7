"""Experiment harness: matrix I/O, synthetic matrices, trial runner, result output."""

from .experiment import ExperimentConfig, TrialStats, probability_ratio_report, run_error_experiment
from .io import (
    RESULT_COLUMNS,
    RESULTS_JSON_SCHEMA,
    emit_results,
    read_dense_csv,
    read_matrix,
    read_matrix_market,
)
from .synth import spectrum_with_stable_rank, synth_matrix

__all__ = [
    "ExperimentConfig",
    "RESULT_COLUMNS",
    "RESULTS_JSON_SCHEMA",
    "TrialStats",
    "emit_results",
    "probability_ratio_report",
    "read_dense_csv",
    "read_matrix",
    "read_matrix_market",
    "run_error_experiment",
    "spectrum_with_stable_rank",
    "synth_matrix",
]
