import pytest

from support import build_instance, corpus_spec
from vscover import (
    OracleLimits,
    classic_greedy,
    generate,
    greedy_solve,
    imbalance_family,
    imbalance_report,
)


def test_dominating_set_picked_alone():
    inst = build_instance(2, [[0, 1], [0]], [0, 0], [1])
    assert classic_greedy(inst) == [0]


def test_tie_breaks_to_lowest_index():
    inst = build_instance(4, [[0, 1], [2, 3]], [0, 0], [1])
    assert classic_greedy(inst) == [0, 1]


def test_classic_output_is_a_cover():
    for seed in range(40):
        inst = generate(corpus_spec(seed))
        cover = classic_greedy(inst)
        assert inst.union_of(cover).cardinality() == inst.n


def test_m1_reduction_pick_sequences_match():
    for seed in range(60):
        inst = generate(corpus_spec(seed, m1=True))
        sol, _ = greedy_solve(inst)
        assert classic_greedy(inst) == list(sol.picked)


def test_report_on_singleton_pair():
    # two disjoint singletons, one per agent: baseline picks both, one from
    # each owner, so both objectives are 1
    inst = build_instance(2, [[0], [1]], [0, 1], [1, 1])
    cover = classic_greedy(inst)
    report = imbalance_report(inst, cover, OracleLimits())
    assert report.baseline_objective == 1
    assert report.vsc_objective == 1
    assert report.vsc_rounds == 1
    assert report.opt == 1


def test_report_m1_baseline_is_cover_size():
    inst = build_instance(3, [[0], [1], [2]], [0, 0, 0], [1])
    cover = classic_greedy(inst)
    report = imbalance_report(inst, cover)
    assert report.baseline_objective == len(cover) == 3
    assert report.vsc_rounds == 3
    assert report.opt is None  # no limits passed


def test_report_rejects_non_cover():
    inst = build_instance(2, [[0], [1]], [0, 1], [1, 1])
    with pytest.raises(ValueError):
        imbalance_report(inst, [0])


def test_imbalance_family_loads_baseline_onto_one_agent():
    inst = imbalance_family(rows=8, cols=4)
    cover = classic_greedy(inst)
    # column sets dominate, and they all belong to agent 0
    assert cover == [0, 1, 2, 3]
    assert {inst.owner[j] for j in cover} == {0}
    report = imbalance_report(inst, cover, OracleLimits())
    assert report.opt == 1
    assert report.vsc_rounds == 1
    assert report.baseline_objective == 4
    assert report.baseline_objective >= 2 * report.vsc_rounds


def test_imbalance_family_grows_with_size():
    previous = 0
    for rows, cols in [(5, 2), (9, 4), (13, 6)]:
        inst = imbalance_family(rows, cols)
        report = imbalance_report(inst, classic_greedy(inst), OracleLimits())
        assert report.opt == 1 and report.vsc_rounds == 1
        assert report.baseline_objective == cols > previous
        previous = report.baseline_objective


def test_imbalance_family_validation():
    with pytest.raises(Exception):
        imbalance_family(rows=2, cols=2)
