from taildist.empirical.checks import (
    BridgeCertificate,
    ChernoffCheck,
    DedekindCheck,
    bridge_certificate,
    bridge_multiplier,
    chernoff_check,
    chernoff_gap,
    dedekind_check,
    pointwise_abundancy_check,
)
from taildist.empirical.graph import build_empirical_graph, run_empirical
from taildist.empirical.sieve import (
    CSV_HEADER,
    EmpiricalTail,
    count_tails,
    multiplicative_table,
    parse_threshold,
    sieve_tails,
    write_csv,
)
from taildist.empirical.state import CHECKS, EmpiricalReport, EmpiricalState

__all__ = [
    "CHECKS",
    "CSV_HEADER",
    "BridgeCertificate",
    "ChernoffCheck",
    "DedekindCheck",
    "EmpiricalReport",
    "EmpiricalState",
    "EmpiricalTail",
    "bridge_certificate",
    "bridge_multiplier",
    "build_empirical_graph",
    "chernoff_check",
    "chernoff_gap",
    "count_tails",
    "dedekind_check",
    "multiplicative_table",
    "parse_threshold",
    "pointwise_abundancy_check",
    "run_empirical",
    "sieve_tails",
    "write_csv",
]
