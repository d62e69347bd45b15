"""Exact minimum-objective solver for small instances.

The objective is a max of per-agent ceilings, so "objective <= t" converts to
per-agent cardinality budgets t * weight. The solver therefore iterates the
candidate objective t = 1, 2, ... and answers each decision problem with a
budgeted depth-first search. The greedy solution bounds t from above and
doubles as a feasibility witness at its own objective, which guarantees
termination. Feasibility is monotone in t, so the first feasible t is the
optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import OracleCapError, OracleUnknown
from .greedy import greedy_solve
from .model import ElementSet, Instance, ResidualTrace


@dataclass(frozen=True)
class OracleLimits:
    """Budget caps. The search refuses instances above max_sets and reports
    "unknown" (never a value) when max_nodes is exhausted."""

    max_sets: int = 24
    max_nodes: int = 100_000_000

    def __post_init__(self):
        if self.max_sets < 1 or self.max_nodes < 1:
            raise ValueError("oracle caps must be positive")


def exact_solve(inst: Instance, limits: OracleLimits | None = None) -> tuple[int, list[int]]:
    """Exact minimum objective over all covering subcollections.

    Returns (opt, witness); the witness covers the universe and attains opt.
    Raises OracleCapError above the size cap and OracleUnknown when the node
    budget runs out before an answer is proven.
    """
    limits = limits or OracleLimits()
    if inst.k > limits.max_sets:
        raise OracleCapError(f"instance has {inst.k} sets, cap is {limits.max_sets}")
    if inst.n == 0:
        return 0, []

    sol, _ = greedy_solve(inst)
    upper = sol.objective
    masks = [s.bits for s in inst.sets]
    owner = list(inst.owner)

    nodes_left = limits.max_nodes
    for t in range(1, upper):
        budgets = [t * w for w in inst.weights]
        status, witness, used = kernels.cover_feasible(
            inst.n, masks, owner, budgets, nodes_left
        )
        nodes_left -= used
        if status == kernels.UNKNOWN:
            raise OracleUnknown(
                f"node budget {limits.max_nodes} exhausted at candidate objective {t}",
                nodes=limits.max_nodes - nodes_left,
            )
        if status == kernels.FEASIBLE:
            return t, list(witness)
    # no t below the greedy objective is feasible, so the greedy is optimal
    return upper, list(sol.picked)


def residual_instance(inst: Instance, trace: ResidualTrace, l: int) -> tuple[Instance, list[int]]:
    """Instance left after round l of a traced greedy run.

    Covered elements are dropped and the remaining ones re-indexed densely;
    picked sets and sets with empty residuals are dropped; agents keep their
    weights. Also returns the surviving sets' original indices, aligned with
    the residual instance's set order.
    """
    n_l, surviving, _ = trace.state(l)
    covered = trace.records[l].covered
    remaining = [e for e in range(inst.n) if e not in covered]
    remap = {e: i for i, e in enumerate(remaining)}
    sets = tuple(
        ElementSet.from_indices(n_l, (remap[e] for e in inst.sets[j] if e not in covered))
        for j in surviving
    )
    residual = Instance(
        n=n_l,
        sets=sets,
        owner=tuple(inst.owner[j] for j in surviving),
        weights=inst.weights,
        agent_names=inst.agent_names,
    )
    return residual, list(surviving)


def residual_opt(inst: Instance, trace: ResidualTrace, l: int, limits: OracleLimits | None = None) -> int:
    """Exact optimum of the residual instance after round l.

    Equals exact_solve(inst) at l = 0 and 0 once everything is covered.
    """
    n_l, _, _ = trace.state(l)
    if n_l == 0:
        return 0
    residual, _ = residual_instance(inst, trace, l)
    opt, _ = exact_solve(residual, limits)
    return opt
