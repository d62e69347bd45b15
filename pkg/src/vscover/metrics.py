"""Round-count diagnostics against the exact oracle, plus corpus aggregation.

Two classes of check, kept strictly apart:

* hard assertions, provable or definitional: greedy rounds >= optimum,
  rounds <= 1 + 2*ln(n)*opt (each round gains at least half of what the best
  single round could, so the halving recurrence holds with a factor 2), and
  residual optima never exceed the full optimum. A violation means a bug.

* findings: bounds that per-round interleaving can break on adversarial
  inputs. The tighter envelope rounds <= 1 + ln(n)*opt, the per-round shrink
  bound n_l <= n*(1-1/opt)^l, and the per-round gain bound
  gained_l >= n_{l-1}/opt_{l-1} are measured and tallied, never asserted.

Bound comparisons use natural log (the envelope's derivation is native to e)
in double precision with a 1e-9 absolute slack toward acceptance; round and
optimum values are exact integers. The shrink and gain bounds are evaluated
in exact integer arithmetic.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import InternalCheckError, OracleUnknown
from .exact import OracleLimits, exact_solve, residual_opt
from .generate import GenSpec, generate
from .greedy import GreedyConfig, greedy_solve
from .model import Instance, save_instance

BOUND_SLACK = 1e-9
TAYLOR_GUARD = 1e-12

CSV_HEADER = [
    "seed",
    "n",
    "k",
    "m",
    "rounds",
    "objective",
    "opt",
    "ln_bound",
    "safe_bound",
    "lemma_ok",
    "claim_ok",
]


@dataclass(frozen=True)
class RatioRecord:
    """One instance's worth of diagnostics.

    opt is None when the oracle gave up; bounds are then left unevaluated.
    lemma_ok / claim_ok are None when not evaluated.
    """

    seed: int | None
    n: int
    k: int
    m: int
    rounds: int
    objective: int
    opt: int | None
    ln_bound: float | None
    safe_bound: float | None
    lemma_ok: bool | None
    claim_ok: bool | None

    @property
    def ln_ok(self) -> bool | None:
        if self.opt is None:
            return None
        return self.rounds <= self.ln_bound + BOUND_SLACK

    @property
    def safe_ok(self) -> bool | None:
        if self.opt is None:
            return None
        return self.rounds <= self.safe_bound + BOUND_SLACK

    @property
    def hard_violation(self) -> bool:
        if self.opt is None:
            return False
        return self.rounds < self.opt or not self.safe_ok

    @property
    def paper_finding(self) -> bool:
        """True when a measured-only bound failed on this instance."""
        return (
            self.ln_ok is False
            or self.lemma_ok is False
            or self.claim_ok is False
        )

    def csv_row(self) -> list[str]:
        def b(v):
            return "" if v is None else ("true" if v else "false")

        return [
            "" if self.seed is None else str(self.seed),
            str(self.n),
            str(self.k),
            str(self.m),
            str(self.rounds),
            str(self.objective),
            "unknown" if self.opt is None else str(self.opt),
            "" if self.ln_bound is None else repr(self.ln_bound),
            "" if self.safe_bound is None else repr(self.safe_bound),
            b(self.lemma_ok),
            b(self.claim_ok),
        ]


def _shrink_bound_ok(n: int, opt: int, l: int, n_l: int) -> bool:
    # n_l <= n * (1 - 1/opt)^l, exact in integers: n_l * opt^l <= n * (opt-1)^l
    return n_l * opt**l <= n * (opt - 1) ** l


def lemma_check(inst: Instance, limits: OracleLimits | None = None) -> list[bool]:
    """Per-round booleans for the shrink bound n_l <= n*(1-1/opt)^l, l >= 1.

    With opt = 1 the bound collapses to "finished after one round", which is
    evaluated literally. Raises OracleUnknown if the optimum cannot be had.
    """
    _, trace = greedy_solve(inst, GreedyConfig(trace=True))
    opt, _ = exact_solve(inst, limits)
    return _lemma_rounds(inst.n, opt, trace)


def _lemma_rounds(n: int, opt: int, trace) -> list[bool]:
    return [
        _shrink_bound_ok(n, opt, rec.round, rec.n_l) for rec in trace.records[1:]
    ]


def claim_check(inst: Instance, limits: OracleLimits | None = None) -> list[bool | None]:
    """Per-round booleans for the gain bound gained_l >= n_{l-1}/opt_{l-1}.

    opt_{l-1} comes from the exact oracle on the residual instance. Rounds
    where the oracle gives up are None. As a byproduct every residual optimum
    is checked against the full optimum (hard assertion) whenever the latter
    is known.
    """
    _, trace = greedy_solve(inst, GreedyConfig(trace=True))
    try:
        opt, _ = exact_solve(inst, limits)
    except OracleUnknown:
        opt = None
    return _claim_rounds(inst, trace, opt, limits)


def _claim_rounds(inst: Instance, trace, opt: int | None, limits: OracleLimits | None) -> list[bool | None]:
    out: list[bool | None] = []
    for rec in trace.records[1:]:
        l = rec.round
        n_prev = trace.records[l - 1].n_l
        try:
            opt_prev = residual_opt(inst, trace, l - 1, limits)
        except OracleUnknown:
            out.append(None)
            continue
        if opt is not None and opt_prev > opt:
            raise InternalCheckError(
                f"residual optimum {opt_prev} after round {l - 1} exceeds full optimum {opt}"
            )
        # gained >= n_prev / opt_prev, exact in integers
        out.append(rec.gained * opt_prev >= n_prev)
    return out


def theorem_check(
    inst: Instance,
    limits: OracleLimits | None = None,
    with_claim: bool = False,
    seed: int | None = None,
) -> RatioRecord:
    """Solve greedily, solve exactly, and evaluate the round-count bounds."""
    sol, trace = greedy_solve(inst, GreedyConfig(trace=True))
    try:
        opt, _ = exact_solve(inst, limits)
    except OracleUnknown:
        opt = None
    if opt is None:
        ln_bound = safe_bound = None
        lemma_ok = claim_ok = None
    else:
        ln_n = math.log(inst.n) if inst.n > 0 else 0.0
        ln_bound = 1.0 + ln_n * opt
        safe_bound = 1.0 + 2.0 * ln_n * opt
        lemma_ok = all(_lemma_rounds(inst.n, opt, trace))
        claim_ok = None
        if with_claim:
            per_round = _claim_rounds(inst, trace, opt, limits)
            if any(r is False for r in per_round):
                claim_ok = False
            elif any(r is None for r in per_round):
                claim_ok = None
            else:
                claim_ok = True
    return RatioRecord(
        seed=seed,
        n=inst.n,
        k=inst.k,
        m=inst.m,
        rounds=sol.rounds,
        objective=sol.objective,
        opt=opt,
        ln_bound=ln_bound,
        safe_bound=safe_bound,
        lemma_ok=lemma_ok,
        claim_ok=claim_ok,
    )


def taylor_inequality_check(x_max: int) -> bool:
    """Verify 1 + 1/(x-1) >= e^(1/x) for every integer x in [2, x_max].

    This scalar inequality is what lets the natural-log round envelope absorb
    the geometric shrink rate. Evaluated in double precision with a relative
    guard band of 1e-12 against false negatives from rounding.
    """
    if x_max < 2:
        raise ValueError("x_max must be >= 2")
    for x in range(2, x_max + 1):
        lhs = 1.0 + 1.0 / (x - 1)
        rhs = math.exp(1.0 / x)
        if lhs < rhs * (1.0 - TAYLOR_GUARD):
            return False
    return True


# --- corpus runs --------------------------------------------------------------


def _bench_one(payload) -> tuple[dict | None, str | None, dict | None]:
    """Worker for one corpus seed. Returns (record fields, hard error, finding payload)."""
    spec_fields, seed, limits_fields, with_claim = payload
    spec = GenSpec(**{**spec_fields, "seed": seed})
    limits = OracleLimits(**limits_fields)
    inst = generate(spec)
    try:
        record = theorem_check(inst, limits, with_claim=with_claim, seed=seed)
    except InternalCheckError as exc:
        return None, str(exc), {"seed": seed, "instance": save_instance(inst).decode()}
    finding = None
    if record.hard_violation or record.paper_finding:
        finding = {
            "seed": seed,
            "hard": record.hard_violation,
            "record": record.csv_row(),
            "instance": save_instance(inst).decode(),
        }
    return dataclasses.asdict(record), None, finding


def bench_corpus(
    base: GenSpec,
    seeds: range,
    limits: OracleLimits | None = None,
    with_claim: bool = False,
    jobs: int = 1,
    findings_dir: str | Path | None = None,
) -> tuple[list[RatioRecord], dict]:
    """Run diagnostics over one generated instance per seed.

    Returns (records in seed order, summary). Records are omitted for
    instances that tripped a hard internal check (counted in the summary and
    archived when findings_dir is given). Summary format:
    {"instances": int, "hard_violations": int, "paper_findings": int}.
    """
    limits = limits or OracleLimits()
    payloads = [
        (
            {f.name: getattr(base, f.name) for f in dataclasses.fields(base)},
            seed,
            {"max_sets": limits.max_sets, "max_nodes": limits.max_nodes},
            with_claim,
        )
        for seed in seeds
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_bench_one, payloads))
    else:
        results = [_bench_one(p) for p in payloads]

    records: list[RatioRecord] = []
    hard = 0
    findings = 0
    archive: list[dict] = []
    for fields, hard_error, finding in results:
        if hard_error is not None:
            hard += 1
            if finding:
                archive.append(finding)
            continue
        record = RatioRecord(**fields)
        records.append(record)
        if record.hard_violation:
            hard += 1
        if record.paper_finding:
            findings += 1
        if finding:
            archive.append(finding)
    if findings_dir is not None and archive:
        out = Path(findings_dir)
        out.mkdir(parents=True, exist_ok=True)
        for item in archive:
            (out / f"finding_seed{item['seed']}.json").write_text(
                json.dumps(item, indent=2)
            )
    summary = {
        "instances": len(payloads),
        "hard_violations": hard,
        "paper_findings": findings,
    }
    return records, summary


def write_csv(records: list[RatioRecord], fp) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(r.csv_row())
