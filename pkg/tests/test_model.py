import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import build_instance
from vscover import (
    ElementSet,
    Instance,
    InstanceError,
    Solution,
    load_instance,
    load_solution,
    objective,
    save_instance,
    save_solution,
    verify_solution,
)


# --- ElementSet ---------------------------------------------------------------


def bitsets(max_n=48):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))
    )


@given(bitsets())
def test_cardinality_is_popcount(nb):
    n, bits = nb
    s = ElementSet(n, bits)
    assert s.cardinality() == bin(bits).count("1")
    assert len(list(s)) == s.cardinality()
    assert sorted(s) == s.to_list()


@given(bitsets(), st.integers(0, 2**48 - 1))
def test_inclusion_exclusion(nb, other_bits):
    n, bits = nb
    a = ElementSet(n, bits)
    b = ElementSet(n, other_bits & ((1 << n) - 1))
    assert len(a | b) + len(a & b) == len(a) + len(b)
    assert (a - b).bits == a.bits & ~b.bits
    assert (a | b).complement() == a.complement() & b.complement()


def test_elementset_bounds():
    with pytest.raises(ValueError):
        ElementSet(3, 1 << 3)
    with pytest.raises(ValueError):
        ElementSet.from_indices(3, [3])
    with pytest.raises(ValueError):
        ElementSet(2, 1) | ElementSet(3, 1)
    assert ElementSet.full(5).cardinality() == 5
    assert 2 in ElementSet.from_indices(4, [2])
    assert 3 not in ElementSet.from_indices(4, [2])


# --- Instance validation --------------------------------------------------------


def test_minimal_valid_instance():
    inst = build_instance(2, [[0], [1]], [0, 0], [1])
    assert inst.k == 2 and inst.m == 1
    assert inst.agent_names == ("agent0",)


def test_three_set_two_agent_instance():
    inst = build_instance(3, [[0, 1], [1, 2], [2]], [0, 0, 1], [1, 1])
    assert inst.m == 2
    assert inst.agent_sets() == ((0, 1), (2,))


def test_coverage_violation_rejected():
    with pytest.raises(InstanceError) as err:
        build_instance(2, [[0]], [0], [1])
    assert err.value.kind == "coverage"
    assert "element 1" in str(err.value)


def test_weight_zero_rejected():
    with pytest.raises(InstanceError) as err:
        build_instance(1, [[0]], [0], [0])
    assert err.value.kind == "weight"


def test_unknown_owner_rejected():
    with pytest.raises(InstanceError) as err:
        build_instance(1, [[0]], [5], [1])
    assert err.value.kind == "partition"


# --- objective -----------------------------------------------------------------


def test_objective_single_agent_is_cardinality():
    inst = build_instance(3, [[0], [1], [2]], [0, 0, 0], [1])
    assert objective(inst, [0, 1, 2]) == 3
    assert objective(inst, []) == 0


def test_objective_weighted_two_agents():
    inst = build_instance(4, [[0], [1], [2], [3]], [0, 0, 0, 1], [2, 1])
    # agent 0 owns 3 picked sets with weight 2, agent 1 owns 1 with weight 1
    assert objective(inst, [0, 1, 2, 3]) == 2


def test_objective_errors():
    inst = build_instance(2, [[0], [1]], [0, 0], [1])
    with pytest.raises(ValueError):
        objective(inst, [2])
    with pytest.raises(ValueError):
        objective(inst, [0, 0])


def test_empty_sets_are_permitted_and_never_picked():
    from vscover import greedy_solve

    inst = build_instance(2, [[], [0, 1], []], [0, 1, 1], [1, 1])
    sol, _ = greedy_solve(inst)
    assert list(sol.picked) == [1]


def test_m1_unit_weight_objective_is_pick_count():
    import random

    rng = random.Random(99)
    for _ in range(50):
        n = rng.randint(1, 8)
        k = rng.randint(1, 6)
        home = [rng.randrange(k) for e in range(n)]
        sets = [[e for e in range(n) if home[e] == j or rng.random() < 0.3] for j in range(k)]
        inst = build_instance(n, sets, [0] * k, [1])
        picked = rng.sample(range(k), rng.randint(0, k))
        assert objective(inst, picked) == len(picked)


@st.composite
def small_instances(draw, max_n=10, max_k=7, max_m=3):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    k = draw(st.integers(1, max_k))
    # each element goes into at least one set so coverage holds
    home = [draw(st.integers(0, k - 1)) for _ in range(n)]
    sets = []
    for j in range(k):
        extra = draw(st.integers(0, (1 << n) - 1))
        bits = extra
        for e, h in enumerate(home):
            if h == j:
                bits |= 1 << e
        sets.append(ElementSet(n, bits))
    owner = tuple(draw(st.integers(0, m - 1)) for _ in range(k))
    weights = tuple(draw(st.integers(1, 3)) for _ in range(m))
    return Instance(n=n, sets=tuple(sets), owner=owner, weights=weights)


@given(small_instances(), st.data())
@settings(max_examples=60, deadline=None)
def test_objective_monotone_and_permutation_invariant(inst, data):
    picked = data.draw(st.lists(st.integers(0, inst.k - 1), unique=True))
    value = objective(inst, picked)
    perm = data.draw(st.permutations(picked))
    assert objective(inst, perm) == value
    rest = [j for j in range(inst.k) if j not in picked]
    if rest:
        extra = data.draw(st.sampled_from(rest))
        assert objective(inst, picked + [extra]) >= value


@given(small_instances(), st.data())
@settings(max_examples=60, deadline=None)
def test_objective_between_agent_bounds(inst, data):
    picked = data.draw(st.lists(st.integers(0, inst.k - 1), unique=True))
    counts = [0] * inst.m
    for j in picked:
        counts[inst.owner[j]] += 1
    ceilings = [(c + w - 1) // w for c, w in zip(counts, inst.weights)]
    value = objective(inst, picked)
    assert max(ceilings) <= value <= sum(ceilings)


# --- serialization ---------------------------------------------------------------


@given(small_instances())
@settings(max_examples=60, deadline=None)
def test_instance_round_trip(inst):
    assert load_instance(save_instance(inst)) == inst


def test_instance_round_trip_unicode_names():
    inst = build_instance(2, [[0], [1]], [0, 1], [1, 2], names=["ÄgentΩ", "节点"])
    again = load_instance(save_instance(inst))
    assert again == inst
    assert again.agent_names == ("ÄgentΩ", "节点")


def test_save_instance_canonical_sorted_elements():
    inst = build_instance(3, [[2, 0, 1]], [0], [1])
    doc = json.loads(save_instance(inst))
    assert doc["sets"] == [[0, 1, 2]]


def test_load_instance_errors():
    with pytest.raises(InstanceError) as err:
        load_instance(b"{not json")
    assert err.value.kind == "syntax"

    def doc(**kw):
        base = {"n": 2, "sets": [[0], [1]], "agents": [{"name": "a", "weight": 1, "sets": [0, 1]}]}
        base.update(kw)
        return json.dumps(base).encode()

    assert load_instance(doc()).k == 2
    with pytest.raises(InstanceError) as err:
        load_instance(doc(agents=[{"weight": 1, "sets": [0]}]))
    assert err.value.kind == "partition"  # set 1 unowned
    with pytest.raises(InstanceError) as err:
        load_instance(
            doc(agents=[{"weight": 1, "sets": [0, 1]}, {"weight": 1, "sets": [1]}])
        )
    assert err.value.kind == "partition"  # set 1 owned twice
    with pytest.raises(InstanceError) as err:
        load_instance(doc(agents=[{"weight": 0, "sets": [0, 1]}]))
    assert err.value.kind == "weight"
    with pytest.raises(InstanceError) as err:
        load_instance(doc(sets=[[0], [5]]))
    assert err.value.kind == "element"
    with pytest.raises(InstanceError) as err:
        load_instance(doc(sets=[[0]], agents=[{"weight": 1, "sets": [0]}]))
    assert err.value.kind == "coverage"


def test_solution_round_trip_and_canonical_form():
    sol = Solution(
        picked=(1, 0),
        schedule=(((0, (1,)), (1, (0,))), ()),  # trailing empty round dropped
        rounds=2,
        objective=1,
    )
    assert sol.schedule == (((0, (1,)), (1, (0,))),)
    again = load_solution(save_solution(sol))
    assert again == sol
    doc = json.loads(save_solution(sol))
    assert doc["schedule"] == [[{"agent": 0, "sets": [1]}, {"agent": 1, "sets": [0]}]]


# --- verify_solution -------------------------------------------------------------


def test_verify_good_solution():
    from vscover import greedy_solve

    inst = build_instance(3, [[0, 1], [1, 2], [2]], [0, 0, 1], [1, 1])
    sol, _ = greedy_solve(inst)
    report = verify_solution(inst, sol)
    assert report.ok, report.to_dict()


def test_verify_cover_failure_names_element():
    inst = build_instance(2, [[0], [1]], [0, 0], [1])
    sol = Solution(picked=(0,), schedule=(((0, (0,)),),), rounds=1, objective=1)
    report = verify_solution(inst, sol)
    assert not report.ok
    failed = {c.name: c for c in report.failures()}
    assert "cover" in failed
    assert "element 1" in failed["cover"].detail


def test_verify_objective_mismatch():
    inst = build_instance(2, [[0], [1]], [0, 0], [1])
    sol = Solution(
        picked=(0, 1),
        schedule=(((0, (0,)),), ((0, (1,)),)),
        rounds=2,
        objective=3,  # off by one
    )
    report = verify_solution(inst, sol)
    names = [c.name for c in report.failures()]
    assert "objective" in names


def test_verify_budget_violation():
    inst = build_instance(2, [[0], [1]], [0, 0], [1])
    sol = Solution(
        picked=(0, 1),
        schedule=(((0, (0, 1)),),),  # two picks in one round, weight 1
        rounds=1,
        objective=2,
    )
    report = verify_solution(inst, sol)
    failed = {c.name: c for c in report.failures()}
    assert "schedule" in failed
    assert "objective_le_rounds" in failed


def test_verify_schedule_must_list_exactly_the_picked_sets():
    inst = build_instance(2, [[0], [1]], [0, 0], [1])
    sol = Solution(
        picked=(0, 1),
        schedule=(((0, (0,)),),),  # set 1 picked but missing from the schedule
        rounds=2,
        objective=2,
    )
    report = verify_solution(inst, sol)
    failed = {c.name: c for c in report.failures()}
    assert set(failed) == {"schedule"}
