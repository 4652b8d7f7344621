from .engine import (
    Counterexample,
    LawReport,
    LawSuiteConfig,
    NoneFound,
    SuiteRejected,
    replay,
    run_suite,
    search_counterexample,
    suite_inputs,
)
from .generators import Grid, decompositions, gen_observables
from .laws import CATALOG, SUM_LAWS

__all__ = [
    "CATALOG",
    "Counterexample",
    "Grid",
    "LawReport",
    "LawSuiteConfig",
    "NoneFound",
    "SUM_LAWS",
    "SuiteRejected",
    "decompositions",
    "gen_observables",
    "replay",
    "run_suite",
    "search_counterexample",
    "suite_inputs",
]
