"""Claim suites, witness search and exports."""

from .report import ClaimReport, ClaimResult
from .suites import SuiteError, run_suite
from .transcription import SUITES, TranscriptionError, load_suite
from .witness import LevelEngine, search_witness

__all__ = [
    "SUITES",
    "ClaimReport",
    "ClaimResult",
    "LevelEngine",
    "SuiteError",
    "TranscriptionError",
    "load_suite",
    "run_suite",
    "search_witness",
]
