"""Ownership-aware set cover toolkit.

Set cover where the sets are partitioned among weighted agents and the goal
is to minimize the maximum per-agent workload, measured in rounds. Ships a
round-based greedy solver with residual instrumentation, an exact
branch-and-bound oracle for small instances, an ownership-blind baseline,
seeded instance generators, and diagnostics that compare the greedy round
count against the oracle.
"""

from .baseline import ImbalanceReport, classic_greedy, imbalance_report
from .errors import (
    GenSpecError,
    InstanceError,
    InternalCheckError,
    OracleCapError,
    OracleUnknown,
    VscError,
)
from .exact import OracleLimits, exact_solve, residual_instance, residual_opt
from .generate import GenSpec, TracerouteDetail, generate, imbalance_family, traceroute_detail
from .greedy import GreedyConfig, greedy_solve, residual_state, trace_to_jsonl
from .kernels import BACKEND
from .metrics import (
    RatioRecord,
    bench_corpus,
    claim_check,
    lemma_check,
    taylor_inequality_check,
    theorem_check,
    write_csv,
)
from .model import (
    Check,
    ElementSet,
    Instance,
    ResidualTrace,
    Solution,
    TraceRound,
    VerificationReport,
    load_instance,
    load_solution,
    objective,
    save_instance,
    save_solution,
    verify_solution,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Check",
    "ElementSet",
    "GenSpec",
    "GenSpecError",
    "GreedyConfig",
    "ImbalanceReport",
    "Instance",
    "InstanceError",
    "InternalCheckError",
    "OracleCapError",
    "OracleLimits",
    "OracleUnknown",
    "RatioRecord",
    "ResidualTrace",
    "Solution",
    "TraceRound",
    "TracerouteDetail",
    "VerificationReport",
    "VscError",
    "bench_corpus",
    "claim_check",
    "classic_greedy",
    "exact_solve",
    "generate",
    "greedy_solve",
    "imbalance_family",
    "imbalance_report",
    "lemma_check",
    "load_instance",
    "load_solution",
    "objective",
    "residual_instance",
    "residual_opt",
    "residual_state",
    "save_instance",
    "save_solution",
    "taylor_inequality_check",
    "theorem_check",
    "trace_to_jsonl",
    "traceroute_detail",
    "verify_solution",
    "write_csv",
]
