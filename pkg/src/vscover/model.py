"""Data model for ownership-partitioned set cover.

An instance is a universe of ``n`` integer elements ``0..n-1``, an ordered
family of sets over that universe, an assignment of every set to exactly one
owning agent, and a positive per-round pick budget (weight) per agent. A
solution records which sets were picked, the per-round schedule, the number
of rounds the solver ran, and the objective value

    max over agents i of ceil(picked sets owned by i / weight of i).

Instances and element sets are immutable after construction and safe to share
between concurrent solver runs.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InstanceError


class ElementSet:
    """Immutable set of integers in ``[0, n)`` backed by a single bitmask.

    Union, intersection, difference and cardinality ride on CPython's big-int
    word operations, costing O(n/64) per call.
    """

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError("universe size must be >= 0")
        if bits < 0 or bits >> n:
            raise ValueError("bitmask contains elements outside [0, n)")
        self.n = n
        self.bits = bits

    @classmethod
    def from_indices(cls, n: int, elems: Iterable[int]) -> "ElementSet":
        bits = 0
        for e in elems:
            if not 0 <= e < n:
                raise ValueError(f"element {e} outside universe of size {n}")
            bits |= 1 << e
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(n, (1 << n) - 1)

    def cardinality(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, e: int) -> bool:
        return 0 <= e < self.n and (self.bits >> e) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def to_list(self) -> list[int]:
        return list(self)

    def _check_width(self, other: "ElementSet") -> None:
        if self.n != other.n:
            raise ValueError(f"universe size mismatch: {self.n} vs {other.n}")

    def union(self, other: "ElementSet") -> "ElementSet":
        self._check_width(other)
        return ElementSet(self.n, self.bits | other.bits)

    def intersection(self, other: "ElementSet") -> "ElementSet":
        self._check_width(other)
        return ElementSet(self.n, self.bits & other.bits)

    def difference(self, other: "ElementSet") -> "ElementSet":
        self._check_width(other)
        return ElementSet(self.n, self.bits & ~other.bits)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def complement(self) -> "ElementSet":
        return ElementSet(self.n, ~self.bits & ((1 << self.n) - 1))

    def issubset(self, other: "ElementSet") -> bool:
        self._check_width(other)
        return self.bits & ~other.bits == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"ElementSet(n={self.n}, {{{', '.join(map(str, self))}}})"


@dataclass(frozen=True)
class Instance:
    """A full problem input.

    owner maps each set index j to the agent that owns it, so the agent
    families partition the set list. Weights are per-round pick budgets and
    must be >= 1. Every element of the universe must be covered by some set;
    instances violating that are rejected at construction.
    """

    n: int
    sets: tuple[ElementSet, ...]
    owner: tuple[int, ...]
    weights: tuple[int, ...]
    agent_names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        object.__setattr__(self, "owner", tuple(self.owner))
        object.__setattr__(self, "weights", tuple(self.weights))
        if self.n < 0:
            raise InstanceError("format", "universe size must be >= 0")
        m = len(self.weights)
        if m == 0:
            raise InstanceError("partition", "at least one agent is required")
        if len(self.owner) != len(self.sets):
            raise InstanceError(
                "partition",
                f"{len(self.sets)} sets but {len(self.owner)} ownership entries",
            )
        for i, w in enumerate(self.weights):
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise InstanceError("weight", f"agent {i} has weight {w!r}; weights must be integers >= 1")
        for j, a in enumerate(self.owner):
            if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < m:
                raise InstanceError("partition", f"set {j} is owned by unknown agent {a!r}")
        union = 0
        for j, s in enumerate(self.sets):
            if not isinstance(s, ElementSet):
                raise InstanceError("format", f"set {j} is not an ElementSet")
            if s.n != self.n:
                raise InstanceError("format", f"set {j} has universe size {s.n}, expected {self.n}")
            union |= s.bits
        if union != (1 << self.n) - 1:
            missing = ((1 << self.n) - 1) & ~union
            e = (missing & -missing).bit_length() - 1
            raise InstanceError("coverage", f"element {e} is not covered by any set")
        if self.agent_names is None:
            object.__setattr__(self, "agent_names", tuple(f"agent{i}" for i in range(m)))
        else:
            object.__setattr__(self, "agent_names", tuple(str(x) for x in self.agent_names))
            if len(self.agent_names) != m:
                raise InstanceError("partition", f"{m} agents but {len(self.agent_names)} names")

    @property
    def k(self) -> int:
        return len(self.sets)

    @property
    def m(self) -> int:
        return len(self.weights)

    def universe(self) -> ElementSet:
        return ElementSet.full(self.n)

    def agent_sets(self) -> tuple[tuple[int, ...], ...]:
        """Set indices per agent, ascending within each agent."""
        fam: list[list[int]] = [[] for _ in range(self.m)]
        for j, a in enumerate(self.owner):
            fam[a].append(j)
        return tuple(tuple(f) for f in fam)

    def union_of(self, indices: Iterable[int]) -> ElementSet:
        bits = 0
        for j in indices:
            bits |= self.sets[j].bits
        return ElementSet(self.n, bits)


def objective(inst: Instance, picked: Iterable[int]) -> int:
    """Objective value of a selected subcollection.

    Agents with no picked sets contribute 0, and the selection does not have
    to be a cover. Raises ValueError on an out-of-range or duplicate index.
    """
    counts = [0] * inst.m
    seen: set[int] = set()
    for j in picked:
        if not 0 <= j < inst.k:
            raise ValueError(f"set index {j} out of range")
        if j in seen:
            raise ValueError(f"duplicate set index {j}")
        seen.add(j)
        counts[inst.owner[j]] += 1
    return max((c + w - 1) // w for c, w in zip(counts, inst.weights))


@dataclass(frozen=True)
class Solution:
    """Solver output: pick order, per-round schedule, rounds and objective.

    The schedule is canonical: rounds contain only agents that actually
    picked, and rounds without picks are dropped. ``rounds`` still counts
    every round the solver started.
    """

    picked: tuple[int, ...]
    schedule: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]
    rounds: int
    objective: int

    def __post_init__(self):
        object.__setattr__(self, "picked", tuple(self.picked))
        canon = []
        for rnd in self.schedule:
            entries = tuple((a, tuple(ss)) for a, ss in rnd if len(tuple(ss)) > 0)
            if entries:
                canon.append(entries)
        object.__setattr__(self, "schedule", tuple(canon))


@dataclass(frozen=True)
class TraceRound:
    """Residual snapshot taken after one greedy round.

    n_l counts still-uncovered elements, ``surviving`` lists unpicked sets
    with a nonempty residual, and ``agent_remaining`` counts unpicked sets
    per agent (empty residuals included).
    """

    round: int
    n_l: int
    covered: ElementSet
    surviving: tuple[int, ...]
    agent_remaining: tuple[int, ...]
    gained: int
    picks: tuple[tuple[int, int, int], ...]  # (agent, set, gain)


@dataclass(frozen=True)
class ResidualTrace:
    """Per-round residual snapshots; records[0] is the pre-run state."""

    records: tuple[TraceRound, ...]

    @property
    def rounds(self) -> int:
        return len(self.records) - 1

    def state(self, l: int) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        """(n_l, surviving set indices, per-agent remaining counts) after round l."""
        if not 0 <= l < len(self.records):
            raise ValueError(f"round index {l} out of range 0..{len(self.records) - 1}")
        rec = self.records[l]
        return rec.n_l, rec.surviving, rec.agent_remaining


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking a Solution against its Instance."""

    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def verify_solution(inst: Instance, sol: Solution) -> VerificationReport:
    """Check a solution against an instance.

    Failures become report content, never exceptions: (a) the picked sets
    cover the universe, (b) the stored objective matches a recomputation,
    (c) the schedule lists each picked set exactly once and respects each
    agent's per-round budget, (d) objective <= rounds.
    """
    checks: list[Check] = []

    bad = [j for j in sol.picked if not 0 <= j < inst.k]
    dup = [j for j, c in Counter(sol.picked).items() if c > 1]
    if bad:
        checks.append(Check("picked", False, f"set index {bad[0]} out of range"))
    elif dup:
        checks.append(Check("picked", False, f"set index {dup[0]} picked more than once"))
    else:
        checks.append(Check("picked", True))
    indices_ok = not bad and not dup

    covered = inst.union_of(j for j in sol.picked if 0 <= j < inst.k)
    if covered.bits == (1 << inst.n) - 1:
        checks.append(Check("cover", True))
    else:
        missing = (1 << inst.n) - 1 & ~covered.bits
        e = (missing & -missing).bit_length() - 1
        checks.append(Check("cover", False, f"element {e} is not covered"))

    if indices_ok:
        expected = objective(inst, sol.picked)
        checks.append(
            Check(
                "objective",
                expected == sol.objective,
                "" if expected == sol.objective else f"stored {sol.objective}, recomputed {expected}",
            )
        )
    else:
        checks.append(Check("objective", False, "cannot recompute: bad picked indices"))

    sched_sets = [s for rnd in sol.schedule for _, ss in rnd for s in ss]
    sched_ok = True
    detail = ""
    if Counter(sched_sets) != Counter(sol.picked):
        sched_ok = False
        detail = "schedule does not list exactly the picked sets"
    else:
        for r, rnd in enumerate(sol.schedule, start=1):
            for a, ss in rnd:
                if not 0 <= a < inst.m:
                    sched_ok, detail = False, f"round {r} names unknown agent {a}"
                    break
                if len(ss) > inst.weights[a]:
                    sched_ok, detail = (
                        False,
                        f"round {r}: agent {a} picked {len(ss)} sets, budget {inst.weights[a]}",
                    )
                    break
            if not sched_ok:
                break
    checks.append(Check("schedule", sched_ok, detail))

    checks.append(
        Check(
            "objective_le_rounds",
            sol.objective <= sol.rounds,
            "" if sol.objective <= sol.rounds else f"objective {sol.objective} > rounds {sol.rounds}",
        )
    )
    return VerificationReport(tuple(checks))


# --- serialization -----------------------------------------------------------
#
# Instance file (UTF-8 JSON):
#   {"n": int, "sets": [[int, ...], ...],
#    "agents": [{"name": str, "weight": int, "sets": [int, ...]}, ...]}
# where every set index appears in exactly one agent's "sets".
#
# Solution file (JSON):
#   {"rounds": int, "objective": int, "picked": [int, ...],
#    "schedule": [[{"agent": int, "sets": [int, ...]}, ...], ...]}
#
# Canonical form: set element lists ascending, schedule without empty rounds.


def _read_text(source) -> str:
    if isinstance(source, bytes):
        data = source
    elif isinstance(source, str):
        return source
    else:
        data = source.read()
        if isinstance(data, str):
            return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InstanceError("syntax", f"input is not valid UTF-8: {exc}") from exc


def _parse_json(source, what: str) -> dict:
    try:
        obj = json.loads(_read_text(source))
    except json.JSONDecodeError as exc:
        raise InstanceError("syntax", f"malformed {what} JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InstanceError("syntax", f"{what} must be a JSON object")
    return obj


def _int_field(obj: dict, key: str, what: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InstanceError("syntax", f"{what}: field {key!r} must be an integer")
    return v


def load_instance(source) -> Instance:
    """Parse an instance file (bytes, str or file-like) and validate it."""
    obj = _parse_json(source, "instance")
    for key in ("n", "sets", "agents"):
        if key not in obj:
            raise InstanceError("syntax", f"instance: missing field {key!r}")
    n = _int_field(obj, "n", "instance")
    raw_sets = obj["sets"]
    raw_agents = obj["agents"]
    if not isinstance(raw_sets, list) or not isinstance(raw_agents, list):
        raise InstanceError("syntax", "instance: 'sets' and 'agents' must be arrays")

    sets = []
    for j, elems in enumerate(raw_sets):
        if not isinstance(elems, list) or any(
            not isinstance(e, int) or isinstance(e, bool) for e in elems
        ):
            raise InstanceError("syntax", f"set {j} must be an array of integers")
        try:
            sets.append(ElementSet.from_indices(n, elems))
        except ValueError as exc:
            raise InstanceError("element", f"set {j}: {exc}") from exc

    k = len(sets)
    owner: list[int | None] = [None] * k
    weights = []
    names = []
    for i, agent in enumerate(raw_agents):
        if not isinstance(agent, dict):
            raise InstanceError("syntax", f"agent {i} must be an object")
        w = _int_field(agent, "weight", f"agent {i}")
        if w < 1:
            raise InstanceError("weight", f"agent {i} has weight {w}; weights must be >= 1")
        weights.append(w)
        names.append(str(agent.get("name", f"agent{i}")))
        owned = agent.get("sets")
        if not isinstance(owned, list) or any(
            not isinstance(j, int) or isinstance(j, bool) for j in owned
        ):
            raise InstanceError("syntax", f"agent {i}: 'sets' must be an array of integers")
        for j in owned:
            if not 0 <= j < k:
                raise InstanceError("partition", f"agent {i} references unknown set {j}")
            if owner[j] is not None:
                raise InstanceError("partition", f"set {j} is owned by agents {owner[j]} and {i}")
            owner[j] = i
    unowned = [j for j, a in enumerate(owner) if a is None]
    if unowned:
        raise InstanceError("partition", f"set {unowned[0]} has no owner")

    return Instance(
        n=n,
        sets=tuple(sets),
        owner=tuple(owner),  # type: ignore[arg-type]
        weights=tuple(weights),
        agent_names=tuple(names),
    )


def save_instance(inst: Instance) -> bytes:
    """Serialize an instance in canonical form (round-trips through load)."""
    agents = []
    for i, owned in enumerate(inst.agent_sets()):
        agents.append(
            {"name": inst.agent_names[i], "weight": inst.weights[i], "sets": list(owned)}
        )
    doc = {"n": inst.n, "sets": [s.to_list() for s in inst.sets], "agents": agents}
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def load_solution(source) -> Solution:
    obj = _parse_json(source, "solution")
    for key in ("rounds", "objective", "picked", "schedule"):
        if key not in obj:
            raise InstanceError("syntax", f"solution: missing field {key!r}")
    rounds = _int_field(obj, "rounds", "solution")
    objective_value = _int_field(obj, "objective", "solution")
    picked = obj["picked"]
    if not isinstance(picked, list) or any(
        not isinstance(j, int) or isinstance(j, bool) for j in picked
    ):
        raise InstanceError("syntax", "solution: 'picked' must be an array of integers")
    raw_schedule = obj["schedule"]
    if not isinstance(raw_schedule, list):
        raise InstanceError("syntax", "solution: 'schedule' must be an array")
    schedule = []
    for r, rnd in enumerate(raw_schedule):
        if not isinstance(rnd, list):
            raise InstanceError("syntax", f"solution: round {r} must be an array")
        entries = []
        for entry in rnd:
            if not isinstance(entry, dict) or "agent" not in entry or "sets" not in entry:
                raise InstanceError("syntax", f"solution: round {r} entries need 'agent' and 'sets'")
            a = _int_field(entry, "agent", f"round {r}")
            ss = entry["sets"]
            if not isinstance(ss, list) or any(
                not isinstance(j, int) or isinstance(j, bool) for j in ss
            ):
                raise InstanceError("syntax", f"solution: round {r}: 'sets' must be integers")
            entries.append((a, tuple(ss)))
        schedule.append(tuple(entries))
    return Solution(
        picked=tuple(picked),
        schedule=tuple(schedule),
        rounds=rounds,
        objective=objective_value,
    )


def save_solution(sol: Solution) -> bytes:
    doc = {
        "rounds": sol.rounds,
        "objective": sol.objective,
        "picked": list(sol.picked),
        "schedule": [
            [{"agent": a, "sets": list(ss)} for a, ss in rnd] for rnd in sol.schedule
        ],
    }
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
