"""Ownership-blind greedy set cover, used as a reduction target and a foil.

Minimizing the number of covering sets ignores who has to execute them; the
imbalance report puts that cover's per-agent objective next to what the
ownership-aware greedy achieves on the same instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import InternalCheckError, OracleCapError, OracleUnknown
from .exact import OracleLimits, exact_solve
from .greedy import greedy_solve
from .model import Instance, objective


def classic_greedy(inst: Instance) -> list[int]:
    """Classic greedy cover over all sets regardless of owner.

    Picks the set with maximum fresh coverage (lowest index on ties), skips
    nothing useful, and stops when the universe is covered. Returns the pick
    order.
    """
    try:
        return [j for j, _ in kernels.classic_greedy_picks(inst.n, [s.bits for s in inst.sets])]
    except RuntimeError as exc:
        raise InternalCheckError(str(exc)) from exc


@dataclass(frozen=True)
class ImbalanceReport:
    baseline_objective: int
    vsc_objective: int
    vsc_rounds: int
    opt: int | None = None

    def to_dict(self) -> dict:
        return {
            "baseline_objective": self.baseline_objective,
            "vsc_objective": self.vsc_objective,
            "vsc_rounds": self.vsc_rounds,
            "opt": self.opt,
        }


def imbalance_report(inst: Instance, cover: list[int], limits: OracleLimits | None = None) -> ImbalanceReport:
    """Compare an ownership-blind cover with the ownership-aware greedy.

    ``cover`` must cover the universe (ValueError otherwise). When limits are
    given, the exact optimum is attached too; it stays None if the instance
    is over the oracle's caps or the search gives up.
    """
    covered = inst.union_of(cover)  # raises IndexError on bad indices
    if covered.bits != (1 << inst.n) - 1:
        raise ValueError("cover does not cover the universe")
    baseline_objective = objective(inst, cover)
    sol, _ = greedy_solve(inst)
    opt = None
    if limits is not None:
        try:
            opt, _ = exact_solve(inst, limits)
        except (OracleCapError, OracleUnknown):
            opt = None
    return ImbalanceReport(
        baseline_objective=baseline_objective,
        vsc_objective=sol.objective,
        vsc_rounds=sol.rounds,
        opt=opt,
    )
