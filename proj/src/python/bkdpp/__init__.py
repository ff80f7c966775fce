"""Exact projection DPP probabilities, CS decompositions and BK checks."""

from ._core import (
    RNG_NAME,
    SUITES,
    CSDecomposition,
    ConditionedProcess,
    Error,
    Frame,
    FuzzSummary,
    Report,
    SuiteStats,
    check_bk,
    check_lemma1,
    check_lemma2,
    check_theorem1,
    check_theorem2,
    compute_cs,
    condition_on_exclusion,
    condition_on_inclusion,
    elementary_probability,
    exact_law,
    exclusion_probability,
    fuzz,
    inclusion_probability,
    sample,
)

__all__ = [
    "RNG_NAME",
    "SUITES",
    "CSDecomposition",
    "ConditionedProcess",
    "Error",
    "Frame",
    "FuzzSummary",
    "Report",
    "SuiteStats",
    "check_bk",
    "check_lemma1",
    "check_lemma2",
    "check_theorem1",
    "check_theorem2",
    "compute_cs",
    "condition_on_exclusion",
    "condition_on_inclusion",
    "elementary_probability",
    "exact_law",
    "exclusion_probability",
    "fuzz",
    "inclusion_probability",
    "sample",
]
