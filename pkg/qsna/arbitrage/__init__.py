"""No-arbitrage - local, single-prior and quasi-sure verdicts and witnesses."""

from .local import LocalVerdict, OmegaNA, local_na, null_strategies, omega_na, single_node_na
from .quasi_sure import (
    ArbitrageWitness,
    NotRelevantError,
    SectionResult,
    extract_arbitrage,
    find_arbitrage,
    global_na,
    section_positive,
    single_prior_na,
    verify_witness,
)
from .search import arbitrage_search, global_arbitrage_search, local_witness_lp, single_prior_arbitrage_search
from .report import NAReport, diagnose

__all__ = [
    "LocalVerdict",
    "OmegaNA",
    "local_na",
    "null_strategies",
    "omega_na",
    "single_node_na",
    "ArbitrageWitness",
    "NotRelevantError",
    "SectionResult",
    "extract_arbitrage",
    "find_arbitrage",
    "global_na",
    "section_positive",
    "single_prior_na",
    "verify_witness",
    "arbitrage_search",
    "global_arbitrage_search",
    "local_witness_lp",
    "single_prior_arbitrage_search",
    "NAReport",
    "diagnose",
]
