"""Oracles, lemma checks, decomposition bookkeeping and sweep harness."""
from .burgess import BurgessRow, burgess_scan, scan_primes
from .decomposition import CoverReport, Decomposition, cover_check, decomposition_sum, min_depth
from .lemmas import Check, lemma_suite
from .oracles import EULER_GAMMA, divisor_residual, divisor_sum, strip_count
from .sweep import ConfigError, SweepConfig, SweepRecord, fit_constant, sweep

__all__ = [
    "BurgessRow", "burgess_scan", "scan_primes",
    "CoverReport", "Decomposition", "cover_check", "decomposition_sum", "min_depth",
    "Check", "lemma_suite",
    "EULER_GAMMA", "divisor_residual", "divisor_sum", "strip_count",
    "ConfigError", "SweepConfig", "SweepRecord", "fit_constant", "sweep",
]
