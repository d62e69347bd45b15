"""Pure-Python bitset kernels.

Set masks are arbitrary-precision ints, one bit per universe element, so the
word loops run inside CPython's big-int routines. A marginal-gain scan costs
O(k * n/64); the budgeted cover search is exponential in the worst case and
is bounded by an explicit node budget.

The compiled twin in _kernels.pyx must stay behaviour-identical: same
tie-breaking, same node accounting, same witness order. tests/test_kernels.py
enforces the equivalence.
"""

FEASIBLE = 1
INFEASIBLE = 0
UNKNOWN = -1


def greedy_rounds(n, masks, owner, weights):
    """Round-based ownership-aware greedy.

    Each round visits agents in index order; agent i makes up to weights[i]
    picks, each time taking its unpicked set with the largest fresh coverage
    (lowest index on ties). A best gain of zero ends the agent's turn, and
    the run stops the moment everything is covered, mid-round included.

    Returns a list of rounds, each a list of (agent, set_index, gain).
    Raises RuntimeError if a round completes without covering anything new
    while elements remain (impossible when the sets cover the universe).
    """
    m = len(weights)
    agent_sets = [[] for _ in range(m)]
    for j, a in enumerate(owner):
        agent_sets[a].append(j)
    full = (1 << n) - 1
    covered = 0
    picked = [False] * len(masks)
    rounds = []
    while covered != full:
        this_round = []
        for i in range(m):
            for _ in range(weights[i]):
                if covered == full:
                    break
                best = -1
                best_gain = 0
                for j in agent_sets[i]:
                    if picked[j]:
                        continue
                    g = (masks[j] & ~covered).bit_count()
                    if g > best_gain:
                        best = j
                        best_gain = g
                if best < 0:
                    break  # zero gain forfeits the rest of this agent's turn
                picked[best] = True
                covered |= masks[best]
                this_round.append((i, best, best_gain))
            if covered == full:
                break
        if not this_round:
            raise RuntimeError("greedy round made no progress with elements still uncovered")
        rounds.append(this_round)
    return rounds


def classic_greedy_picks(n, masks):
    """Ownership-blind greedy set cover: max fresh coverage, lowest index on ties.

    Returns the pick order as a list of (set_index, gain).
    """
    full = (1 << n) - 1
    covered = 0
    picked = [False] * len(masks)
    order = []
    while covered != full:
        best = -1
        best_gain = 0
        for j, mask in enumerate(masks):
            if picked[j]:
                continue
            g = (mask & ~covered).bit_count()
            if g > best_gain:
                best = j
                best_gain = g
        if best < 0:
            raise RuntimeError("no set adds coverage but elements remain uncovered")
        picked[best] = True
        covered |= masks[best]
        order.append((best, best_gain))
    return order


def cover_feasible(n, masks, owner, budgets, max_nodes):
    """Decide whether the universe can be covered picking at most budgets[a]
    sets from each agent a.

    Depth-first search branching on the lowest-index uncovered element;
    candidate sets are ordered by descending fresh coverage, then ascending
    index. Failed (covered, budgets) states are memoised under budget
    dominance: failing with more budget implies failing with less.

    Returns (status, witness, nodes): status is FEASIBLE / INFEASIBLE /
    UNKNOWN (node budget exhausted), witness is the pick order on success
    else None, nodes is the number of search nodes visited.
    """
    full = (1 << n) - 1
    elem_sets = [[] for _ in range(n)]
    for j, mask in enumerate(masks):
        mk = mask
        while mk:
            low = mk & -mk
            elem_sets[low.bit_length() - 1].append(j)
            mk ^= low
    budgets = list(budgets)
    failed = {}  # covered mask -> list of maximal failed budget tuples
    witness = []
    nodes = 0

    def record_failure(covered):
        bt = tuple(budgets)
        lst = failed.setdefault(covered, [])
        lst[:] = [f for f in lst if not all(x >= y for x, y in zip(bt, f))]
        lst.append(bt)

    def dfs(covered):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            return UNKNOWN
        if covered == full:
            return FEASIBLE
        for fb in failed.get(covered, ()):
            if all(b <= f for b, f in zip(budgets, fb)):
                return INFEASIBLE
        uncovered = full & ~covered
        total_budget = sum(budgets)
        if total_budget == 0:
            record_failure(covered)
            return INFEASIBLE
        max_gain = 0
        for j, mask in enumerate(masks):
            if budgets[owner[j]] > 0:
                g = (mask & ~covered).bit_count()
                if g > max_gain:
                    max_gain = g
        if max_gain * total_budget < uncovered.bit_count():
            record_failure(covered)
            return INFEASIBLE
        e = (uncovered & -uncovered).bit_length() - 1
        cands = [j for j in elem_sets[e] if budgets[owner[j]] > 0]
        if not cands:
            record_failure(covered)
            return INFEASIBLE
        gains = {j: (masks[j] & ~covered).bit_count() for j in cands}
        cands.sort(key=lambda j: (-gains[j], j))
        for j in cands:
            a = owner[j]
            budgets[a] -= 1
            witness.append(j)
            r = dfs(covered | masks[j])
            if r == FEASIBLE:
                return FEASIBLE
            budgets[a] += 1
            witness.pop()
            if r == UNKNOWN:
                return UNKNOWN
        record_failure(covered)
        return INFEASIBLE

    status = dfs(0)
    return status, (list(witness) if status == FEASIBLE else None), nodes
