"""Seeded instance generation.

Two kinds: "random" draws a set system uniformly; "traceroute" builds a
random graph, places agents at nodes, and turns each agent-to-destination
shortest path into one owned set of edges, mimicking measurement scheduling
where the universe is exactly the edges previously observed. Both are pure
functions of the spec: the same seed always yields byte-identical instances.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .errors import GenSpecError, InternalCheckError
from .model import ElementSet, Instance

_GNP_RETRIES = 50


@dataclass(frozen=True)
class GenSpec:
    """Generation parameters.

    random kind: n elements, k sets with sizes uniform in [s_min, s_max],
    m agents, weights uniform in [w_min, w_max]. The universe shrinks to the
    union of the drawn sets, re-indexed densely, so coverage always holds.

    traceroute kind: ``nodes`` graph vertices, edge model "gnp" (parameter p,
    retried while disconnected) or "pa" (preferential attachment, ``attach``
    edges per new node), m agents at distinct nodes, ``dests`` destinations
    per agent.
    """

    kind: str
    seed: int
    # random kind
    n: int | None = None
    k: int | None = None
    m: int | None = None
    s_min: int = 1
    s_max: int | None = None
    w_min: int = 1
    w_max: int = 1
    # traceroute kind
    nodes: int | None = None
    dests: int | None = None
    graph: str = "gnp"
    p: float = 0.15
    attach: int = 2

    def validate(self) -> None:
        if self.kind not in ("random", "traceroute"):
            raise GenSpecError(f"unknown kind {self.kind!r}")
        if not 1 <= self.w_min <= self.w_max:
            raise GenSpecError("need 1 <= w_min <= w_max")
        if self.m is None or self.m < 1:
            raise GenSpecError("m (agent count) must be a positive integer")
        if self.kind == "random":
            if self.n is None or self.n < 1 or self.k is None or self.k < 1:
                raise GenSpecError("random kind needs positive n and k")
            if self.m > self.k:
                raise GenSpecError(f"m={self.m} agents cannot partition k={self.k} sets")
            if not 1 <= self.s_min <= (self.s_max or 0) <= self.n:
                raise GenSpecError("need 1 <= s_min <= s_max <= n")
        else:
            if self.nodes is None or self.nodes < 2:
                raise GenSpecError("traceroute kind needs nodes >= 2")
            if self.m > self.nodes:
                raise GenSpecError("more agents than graph nodes")
            if self.dests is None or not 1 <= self.dests <= self.nodes - 1:
                raise GenSpecError("need 1 <= dests <= nodes - 1")
            if self.graph not in ("gnp", "pa"):
                raise GenSpecError(f"unknown graph model {self.graph!r}")
            if self.graph == "gnp" and not 0.0 < self.p <= 1.0:
                raise GenSpecError("need 0 < p <= 1")
            if self.graph == "pa" and self.attach < 1:
                raise GenSpecError("attach must be >= 1")


@dataclass(frozen=True)
class TracerouteDetail:
    """Instance plus the retained graph data behind it.

    edge_labels[e] is the graph edge (u, v), u < v, that element e stands
    for. paths[i][d] is the node sequence measured by agent i to its d-th
    destination.
    """

    instance: Instance
    edge_labels: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    agent_nodes: tuple[int, ...]
    paths: tuple[tuple[tuple[int, ...], ...], ...]


def generate(spec: GenSpec) -> Instance:
    """Deterministically generate a valid instance from a spec."""
    spec.validate()
    rng = random.Random(spec.seed)
    if spec.kind == "random":
        return _generate_random(spec, rng)
    return _generate_traceroute(spec, rng).instance


def traceroute_detail(spec: GenSpec) -> TracerouteDetail:
    """Traceroute generation with the graph, agent placement and paths kept."""
    spec.validate()
    if spec.kind != "traceroute":
        raise GenSpecError("traceroute_detail needs a traceroute spec")
    return _generate_traceroute(spec, random.Random(spec.seed))


def _generate_random(spec: GenSpec, rng: random.Random) -> Instance:
    raw_sets = []
    for _ in range(spec.k):
        size = rng.randint(spec.s_min, spec.s_max)
        raw_sets.append(sorted(rng.sample(range(spec.n), size)))
    owner = []
    for j in range(spec.k):
        # round-robin the first m sets so no agent ends up empty
        owner.append(j if j < spec.m else rng.randrange(spec.m))
    weights = [rng.randint(spec.w_min, spec.w_max) for _ in range(spec.m)]

    used = sorted({e for s in raw_sets for e in s})
    remap = {e: i for i, e in enumerate(used)}
    n = len(used)
    sets = tuple(ElementSet.from_indices(n, (remap[e] for e in s)) for s in raw_sets)
    return Instance(n=n, sets=sets, owner=tuple(owner), weights=tuple(weights))


# --- graphs ------------------------------------------------------------------


def _connected(adj: list[list[int]]) -> bool:
    if not adj:
        return True
    seen = [False] * len(adj)
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if not seen[u]:
                seen[u] = True
                count += 1
                queue.append(u)
    return count == len(adj)


def _gnp_graph(v: int, p: float, rng: random.Random) -> list[list[int]]:
    for _ in range(_GNP_RETRIES):
        adj: list[list[int]] = [[] for _ in range(v)]
        for a in range(v):
            for b in range(a + 1, v):
                if rng.random() < p:
                    adj[a].append(b)
                    adj[b].append(a)
        if _connected(adj):
            return adj
    raise GenSpecError(
        f"no connected graph in {_GNP_RETRIES} draws of G({v}, {p}); raise p or nodes"
    )


def _pa_graph(v: int, attach: int, rng: random.Random) -> list[list[int]]:
    # preferential attachment; connected by construction
    adj: list[list[int]] = [[] for _ in range(v)]
    endpoints: list[int] = []
    for b in range(1, v):
        targets: set[int] = set()
        want = min(attach, b)
        while len(targets) < want:
            if endpoints and rng.random() < 0.75:
                targets.add(endpoints[rng.randrange(len(endpoints))])
            else:
                targets.add(rng.randrange(b))
        for a in sorted(targets):
            adj[a].append(b)
            adj[b].append(a)
            endpoints.extend((a, b))
    return adj


def _bfs_dist(adj: list[list[int]], src: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def _lex_shortest_path(adj: list[list[int]], src: int, dst: int) -> list[int]:
    """Lexicographically smallest node sequence among shortest src-dst paths."""
    d_src = _bfs_dist(adj, src)
    d_dst = _bfs_dist(adj, dst)
    if d_src[dst] < 0:
        raise InternalCheckError(f"no path between {src} and {dst} in a connected graph")
    path = [src]
    v = src
    while v != dst:
        v = min(u for u in adj[v] if d_src[u] == d_src[v] + 1 and d_dst[u] == d_dst[v] - 1)
        path.append(v)
    return path


def _generate_traceroute(spec: GenSpec, rng: random.Random) -> TracerouteDetail:
    v = spec.nodes
    if spec.graph == "gnp":
        adj = _gnp_graph(v, spec.p, rng)
    else:
        adj = _pa_graph(v, spec.attach, rng)
    for neighbours in adj:
        neighbours.sort()

    agent_nodes = sorted(rng.sample(range(v), spec.m))
    paths: list[list[list[int]]] = []
    for node in agent_nodes:
        choices = [x for x in range(v) if x != node]
        dests = sorted(rng.sample(choices, spec.dests))
        paths.append([_lex_shortest_path(adj, node, d) for d in dests])

    _self_test_paths(adj, agent_nodes, paths)

    edge_set = set()
    for agent_paths in paths:
        for path in agent_paths:
            for a, b in zip(path, path[1:]):
                edge_set.add((min(a, b), max(a, b)))
    edge_labels = tuple(sorted(edge_set))
    index = {e: i for i, e in enumerate(edge_labels)}
    n = len(edge_labels)

    sets = []
    owner = []
    for i, agent_paths in enumerate(paths):
        for path in agent_paths:
            elems = [index[(min(a, b), max(a, b))] for a, b in zip(path, path[1:])]
            sets.append(ElementSet.from_indices(n, elems))
            owner.append(i)
    weights = [rng.randint(spec.w_min, spec.w_max) for _ in range(spec.m)]

    instance = Instance(
        n=n,
        sets=tuple(sets),
        owner=tuple(owner),
        weights=tuple(weights),
    )
    return TracerouteDetail(
        instance=instance,
        edge_labels=edge_labels,
        adjacency=tuple(tuple(x) for x in adj),
        agent_nodes=tuple(agent_nodes),
        paths=tuple(tuple(tuple(p) for p in agent_paths) for agent_paths in paths),
    )


def _self_test_paths(adj, agent_nodes, paths) -> None:
    # each produced path must be a simple path of the retained graph
    for node, agent_paths in zip(agent_nodes, paths):
        for path in agent_paths:
            if path[0] != node or len(set(path)) != len(path):
                raise InternalCheckError(f"generated path {path} is not simple from {node}")
            for a, b in zip(path, path[1:]):
                if b not in adj[a]:
                    raise InternalCheckError(f"generated path {path} uses missing edge {(a, b)}")


def imbalance_family(rows: int, cols: int) -> Instance:
    """Grid family where counting sets misleads but balancing agents wins.

    Elements form a rows x cols grid. Agent 0 owns the ``cols`` column sets
    (size rows each); agent r+1 owns row r (size cols). With rows > cols the
    ownership-blind greedy covers everything with the columns alone, loading
    ``cols`` picks onto agent 0, while one balanced round (any column plus
    all rows) suffices: optimum 1. Requires rows > cols >= 2.
    """
    if not rows > cols >= 2:
        raise GenSpecError("imbalance family needs rows > cols >= 2")
    n = rows * cols
    sets = []
    owner = []
    for c in range(cols):
        sets.append(ElementSet.from_indices(n, (r * cols + c for r in range(rows))))
        owner.append(0)
    for r in range(rows):
        sets.append(ElementSet.from_indices(n, (r * cols + c for c in range(cols))))
        owner.append(r + 1)
    weights = tuple([1] * (rows + 1))
    return Instance(n=n, sets=tuple(sets), owner=tuple(owner), weights=weights)
