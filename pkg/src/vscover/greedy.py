"""Ownership-aware round greedy with optional residual instrumentation."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from . import kernels
from .errors import InternalCheckError
from .model import ElementSet, Instance, ResidualTrace, Solution, TraceRound, objective


@dataclass(frozen=True)
class GreedyConfig:
    """Solver knobs.

    tie_break names the only policy implemented in v1: among equal marginal
    gains the lowest set index wins. The field exists so alternative policies
    can be added without changing call sites.
    """

    trace: bool = False
    tie_break: str = "lowest-index"

    def __post_init__(self):
        if self.tie_break != "lowest-index":
            raise ValueError(f"unknown tie_break policy {self.tie_break!r}")


def greedy_solve(inst: Instance, cfg: GreedyConfig | None = None) -> tuple[Solution, ResidualTrace | None]:
    """Run the round-based greedy and return (Solution, trace or None).

    Rounds are numbered 1, 2, ...; within a round agents are visited in index
    order and agent i makes up to weights[i] picks, each the unpicked owned
    set with maximum fresh coverage (lowest index on ties). A zero best gain
    ends the agent's turn for the round; the run exits the moment the
    universe is covered, mid-round included. Deterministic: identical inputs
    give identical outputs. Cost is O(rounds * k * n/64) word operations.
    """
    cfg = cfg or GreedyConfig()
    try:
        raw = kernels.greedy_rounds(
            inst.n,
            [s.bits for s in inst.sets],
            list(inst.owner),
            list(inst.weights),
        )
    except RuntimeError as exc:
        raise InternalCheckError(str(exc)) from exc

    picked = [j for rnd in raw for (_, j, _) in rnd]
    schedule = []
    for rnd in raw:
        entries = []
        for a, grp in itertools.groupby(rnd, key=lambda p: p[0]):
            entries.append((a, tuple(j for _, j, _ in grp)))
        schedule.append(tuple(entries))
    sol = Solution(
        picked=tuple(picked),
        schedule=tuple(schedule),
        rounds=len(raw),
        objective=objective(inst, picked),
    )
    trace = _build_trace(inst, raw) if cfg.trace else None
    return sol, trace


def _build_trace(inst: Instance, raw: list[list[tuple[int, int, int]]]) -> ResidualTrace:
    masks = [s.bits for s in inst.sets]
    picked_flag = [False] * inst.k
    covered = 0

    def snapshot(l: int, gained: int, picks: tuple) -> TraceRound:
        n_l = inst.n - covered.bit_count()
        surviving = tuple(
            j for j in range(inst.k) if not picked_flag[j] and masks[j] & ~covered
        )
        remaining = [0] * inst.m
        for j in range(inst.k):
            if not picked_flag[j]:
                remaining[inst.owner[j]] += 1
        return TraceRound(
            round=l,
            n_l=n_l,
            covered=ElementSet(inst.n, covered),
            surviving=surviving,
            agent_remaining=tuple(remaining),
            gained=gained,
            picks=picks,
        )

    records = [snapshot(0, 0, ())]
    for l, rnd in enumerate(raw, start=1):
        before = inst.n - covered.bit_count()
        for _, j, _ in rnd:
            picked_flag[j] = True
            covered |= masks[j]
        after = inst.n - covered.bit_count()
        records.append(snapshot(l, before - after, tuple(rnd)))
    return ResidualTrace(records=tuple(records))


def residual_state(trace: ResidualTrace, l: int) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Recorded residual snapshot after round l; l=0 is the pre-run state."""
    return trace.state(l)


def trace_to_jsonl(trace: ResidualTrace) -> str:
    """One JSON object per completed round: round, n_l, gained, picks."""
    lines = []
    for rec in trace.records[1:]:
        lines.append(
            json.dumps(
                {
                    "round": rec.round,
                    "n_l": rec.n_l,
                    "gained": rec.gained,
                    "picks": [
                        {"agent": a, "set": s, "gain": g} for a, s, g in rec.picks
                    ],
                }
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")
