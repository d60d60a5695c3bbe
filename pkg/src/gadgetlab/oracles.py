"""Brute-force reference solvers.

These are deliberately naive and share no code with the incremental engines,
so agreement between the two is meaningful.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations, product
from typing import Hashable, Iterable, Sequence

from .instances import CnfFormula, OuMvInstance, TcStarInstance

SAT_MAX_VARS = 24
TCSTAR_MAX_N = 16
TCSTAR_MAX_DELTA_P = 4


class GuardViolation(ValueError):
    """Input exceeds a desk-scale guard for exponential work."""


@dataclass(frozen=True)
class TripleReport:
    answer: bool
    witnesses: tuple[tuple[int, int, int], ...]


def oumv_oracle(inst: OuMvInstance) -> list[bool]:
    n = inst.n
    m = inst.matrix.bits
    return [
        any(u[j] and m[j][k] and v[k] for j in range(n) for k in range(n))
        for u, v in inst.pairs
    ]


def sat_oracle(formula: CnfFormula, max_vars: int = SAT_MAX_VARS) -> bool:
    if formula.num_vars > max_vars:
        raise GuardViolation(f"{formula.num_vars} variables exceeds guard {max_vars}")
    masks = []
    for clause in formula.clauses:
        pos = sum(1 << v for v, pol in clause if pol)
        neg = sum(1 << v for v, pol in clause if not pol)
        masks.append((pos, neg))
    full = (1 << formula.num_vars) - 1
    for x in range(1 << formula.num_vars):
        nx = ~x & full
        if all((x & pos) or (nx & neg) for pos, neg in masks):
            return True
    return False


def tcstar_oracle(
    inst: TcStarInstance,
    max_n: int = TCSTAR_MAX_N,
    max_delta_p: int = TCSTAR_MAX_DELTA_P,
) -> TripleReport:
    if inst.n > max_n or inst.delta > max_delta_p or inst.p > max_delta_p:
        raise GuardViolation(
            f"TC* instance (n={inst.n}, delta={inst.delta}, p={inst.p}) exceeds guard"
        )
    witnesses = []
    for i, alpha, beta in product(range(inst.n), repeat=3):
        triangle = False
        for j in range(inst.delta):
            b = (alpha, j, inst.ab[i, j, alpha])
            c = (beta, j, inst.ac[i, j, beta])
            if (b, c) in inst.bc:
                triangle = True
                break
        if not triangle:
            witnesses.append((i, alpha, beta))
    return TripleReport(bool(witnesses), tuple(witnesses))


def two_color(nodes: Iterable[Hashable], edges: Iterable[tuple]) -> dict:
    """Return a side (0/1) per node, or raise ValueError if not bipartite."""
    adj: dict = {v: [] for v in nodes}
    for u, v, *_ in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    side: dict = {}
    for root in adj:
        if root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    raise ValueError(f"graph is not bipartite: edge ({x}, {y})")
    return side


def max_matching_oracle(edges: Sequence[tuple], left: Iterable[Hashable] | None = None) -> int:
    """Maximum bipartite matching size via Kuhn's augmenting-path search.

    ``left`` names one side of the bipartition; when omitted the graph is
    two-colored. Raises ValueError for non-bipartite input.
    """
    edges = [(u, v) for u, v, *_ in edges]
    if left is None:
        side = two_color([], edges)
        left_set = {x for x, s in side.items() if s == 0}
    else:
        left_set = set(left)
    adj: dict = {}
    for u, v in edges:
        if (u in left_set) == (v in left_set):
            raise ValueError(f"edge ({u}, {v}) does not cross the bipartition")
        if v in left_set:
            u, v = v, u
        adj.setdefault(u, []).append(v)

    mate: dict = {}

    def try_augment(x, seen: set) -> bool:
        for y in adj[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in mate or try_augment(mate[y], seen):
                mate[y] = x
                return True
        return False

    return sum(try_augment(x, set()) for x in adj)


def max_matching_exhaustive(edges: Sequence[tuple]) -> int:
    """Largest set of pairwise disjoint edges, by enumeration. Small inputs only."""
    edges = [(u, v) for u, v, *_ in edges]
    for size in range(len(edges), 0, -1):
        for subset in combinations(edges, size):
            ends = [x for e in subset for x in e]
            if len(set(ends)) == len(ends):
                return size
    return 0


def max_flow_oracle(edges: Sequence[tuple[Hashable, Hashable, int]], s, t) -> int:
    """Edmonds-Karp on a capacity dictionary built from scratch."""
    if s == t:
        raise ValueError("source and sink must differ")
    cap: dict = {}
    adj: dict = {s: set(), t: set()}
    for u, v, c in edges:
        if c < 0:
            raise ValueError(f"negative capacity on ({u}, {v})")
        cap[u, v] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    total = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y in adj[x]:
                if y not in parent and cap[x, y] > 0:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            return total
        path = []
        y = t
        while parent[y] is not None:
            path.append((parent[y], y))
            y = parent[y]
        push = min(cap[e] for e in path)
        for x, y in path:
            cap[x, y] -= push
            cap[y, x] += push
        total += push


def min_cut_enumeration(nodes: Sequence[Hashable], edges, s, t) -> int:
    """Minimum s-t cut capacity over all 2^(|V|-2) source sides."""
    others = [v for v in nodes if v != s and v != t]
    best = math.inf
    for bits in range(1 << len(others)):
        source_side = {s} | {v for k, v in enumerate(others) if bits >> k & 1}
        cut = sum(c for u, v, c in edges if u in source_side and v not in source_side)
        best = min(best, cut)
    return int(best)


@dataclass(frozen=True)
class ApspResult:
    dist: dict
    diameter: float  # math.inf when disconnected


def apsp_bfs_oracle(nodes: Iterable[Hashable], edges: Iterable[tuple]) -> ApspResult:
    """Undirected all-pairs BFS; one queue per source."""
    adj: dict = {v: [] for v in nodes}
    for u, v, *_ in edges:
        adj[u].append(v)
        adj[v].append(u)
    dist = {}
    diameter = 0
    for src in adj:
        row = {src: 0}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in row:
                    row[y] = row[x] + 1
                    queue.append(y)
        dist[src] = row
        if len(row) < len(adj):
            diameter = math.inf
        elif diameter != math.inf:
            diameter = max(diameter, max(row.values()))
    return ApspResult(dist, diameter)
