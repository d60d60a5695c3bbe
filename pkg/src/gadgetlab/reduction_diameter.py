"""Triangle collection* through diameter 3 vs 4.

``build_H`` constructs, for one block of A-colors, the graph whose
a^i_alpha -> t^i_beta distance is 3 when colors (i, alpha, beta) close a
triangle and 4 otherwise; every other pair sits within distance 3. Besides
the textbook edges the master node u is joined to the connector w3. Without
that edge a skip node v_i of a single-color block (or of the only color
present during node additions) has no short route to its own T_i row and
can sit at distance 4 on a NO instance. The extra edge opens no length-3
path from A_i to T_i, so the distance dichotomy is unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .amortization import CreditLedger
from .diameter import bfs_distances, distinguish_3_4, exact_diameter
from .dyngraph import DynGraph, OpCounters
from .instances import TcStarInstance
from .oracles import tcstar_oracle


def block_size(n: int, gamma: float) -> int:
    if not 0 < gamma <= 1:
        raise ValueError(f"gamma must lie in (0, 1], got {gamma}")
    size = math.ceil(n**gamma - 1e-9)
    return max(1, min(n, size))


def block_count(n: int, gamma: float) -> int:
    return math.ceil(n / block_size(n, gamma))


def block_colors(n: int, gamma: float, k: int) -> list[int]:
    if not 0 <= k < block_count(n, gamma):
        raise IndexError(f"block index {k} outside [0, {block_count(n, gamma)})")
    size = block_size(n, gamma)
    return list(range(k * size, min(n, (k + 1) * size)))


@dataclass
class HGraph:
    inst: TcStarInstance
    graph: DynGraph
    gamma: float = 1.0
    k: int = 0
    colors: list[int] = field(default_factory=list)
    b: dict = field(default_factory=dict)  # (color, j, x) -> handle
    c: dict = field(default_factory=dict)
    a: dict = field(default_factory=dict)  # (i, alpha) -> handle
    t: dict = field(default_factory=dict)  # (i, beta) -> handle
    v: dict = field(default_factory=dict)  # i -> handle
    u: int = -1
    w1: int = -1
    w2: int = -1
    w3: int = -1

    def row_a(self, i: int) -> list[int]:
        return [self.a[i, x] for x in range(self.inst.n)]

    def row_t(self, i: int) -> list[int]:
        return [self.t[i, x] for x in range(self.inst.n)]

    # -- node insertion ------------------------------------------------
    def add_scaffold_nodes(self) -> None:
        g = self.graph
        for node in self.inst.side_nodes():
            self.b[node] = g.insert_node()
        for node in self.inst.side_nodes():
            self.c[node] = g.insert_node()
        self.w1, self.w2, self.w3, self.u = g.insert_nodes(4)

    def add_color_nodes(self, i: int) -> None:
        g = self.graph
        n = self.inst.n
        for x in range(n):
            self.a[i, x] = g.insert_node()
        for x in range(n):
            self.t[i, x] = g.insert_node()
        self.v[i] = g.insert_node()
        self.colors.append(i)

    def drop_color(self, i: int) -> None:
        """Forget the handles of a color whose nodes were rolled back."""
        for x in range(self.inst.n):
            del self.a[i, x], self.t[i, x]
        del self.v[i]
        self.colors.remove(i)

    # -- edge families -------------------------------------------------
    def scaffold_edges(self) -> Iterator[tuple[int, int]]:
        """Connector/master edges among B, C, w1..w3, u (no color rows)."""
        yield self.w1, self.w2
        yield self.w2, self.w3
        yield self.w2, self.u
        yield self.u, self.w3
        for node in self.inst.side_nodes():
            yield self.w2, self.b[node]
        for node in self.inst.side_nodes():
            yield self.w2, self.c[node]

    def bc_edges(self) -> Iterator[tuple[int, int]]:
        for bnode, cnode in sorted(self.inst.bc):
            yield self.b[bnode], self.c[cnode]

    def skip_edges(self, i: int, others: list[int]) -> Iterator[tuple[int, int]]:
        """Connector and skip edges for color i, given the other colors present."""
        for a in self.row_a(i):
            yield self.w1, a
        for t in self.row_t(i):
            yield self.w3, t
        yield self.u, self.v[i]
        for a in self.row_a(i):
            yield self.v[i], a
        for other in others:
            for t in self.row_t(other):
                yield self.v[i], t
            for t in self.row_t(i):
                yield self.v[other], t

    def attach_edges(self, i: int) -> Iterator[tuple[int, int]]:
        """A_i - B and C - T_i edges copied from the A-node edges of color i."""
        inst = self.inst
        for i2 in range(inst.n):
            for j in range(inst.delta):
                yield self.a[i, i2], self.b[i2, j, inst.ab[i, j, i2]]
        for i2 in range(inst.n):
            for j in range(inst.delta):
                yield self.c[i2, j, inst.ac[i, j, i2]], self.t[i, i2]

    def insert(self, edges, cost_hook: Callable[[DynGraph], int] | None = None) -> int:
        g = self.graph
        count = 0
        for x, y in edges:
            g.insert_edge(x, y)
            g.charge(1 if cost_hook is None else 1 + cost_hook(g))
            count += 1
        return count


def expected_node_count(inst: TcStarInstance, colors: int) -> int:
    return 2 * inst.n * inst.delta * inst.p + 2 * inst.n * colors + colors + 4


def expected_edge_count(inst: TcStarInstance, colors: int) -> int:
    n, m = inst.n, colors
    per_color = 3 * n + 1 + (m - 1) * n + 2 * n * inst.delta
    return 4 + 2 * n * inst.delta * inst.p + len(inst.bc) + m * per_color


def build_H(inst: TcStarInstance, gamma: float = 1.0, k: int = 0) -> HGraph:
    """All nodes first, then connector/skip edges, B-C edges, and per-color attachments."""
    colors = block_colors(inst.n, gamma, k)
    h = HGraph(inst, DynGraph(), gamma, k)
    h.add_scaffold_nodes()
    for i in colors:
        h.add_color_nodes(i)
    h.insert(h.scaffold_edges())
    for i in colors:
        h.insert(h.skip_edges(i, []))
    for pos, i in enumerate(colors):
        # pair each ordered skip/row combination once
        h.insert((h.v[i], t) for other in colors[pos + 1:] for t in h.row_t(other))
        h.insert((h.v[other], t) for other in colors[pos + 1:] for t in h.row_t(i))
    h.insert(h.bc_edges())
    for i in colors:
        h.insert(h.attach_edges(i))
    return h


@dataclass(frozen=True)
class LemmaReport:
    checked: int
    mismatches: tuple[tuple[int, int, int, float, int], ...]  # (i, alpha, beta, got, want)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_H_distances(h: HGraph, inst: TcStarInstance | None = None) -> LemmaReport:
    inst = inst or h.inst
    missing = set(tcstar_oracle(inst).witnesses)
    adj = h.graph.adjacency()
    checked = 0
    bad = []
    for i in h.colors:
        for alpha in range(inst.n):
            dist = bfs_distances(adj, h.a[i, alpha])
            for beta in range(inst.n):
                want = 4 if (i, alpha, beta) in missing else 3
                got = dist[h.t[i, beta]]
                checked += 1
                if got != want:
                    bad.append((i, alpha, beta, got, want))
    return LemmaReport(checked, tuple(bad))


def solve_tcstar_static(inst: TcStarInstance, gamma: float = 1.0, approx=None) -> bool:
    return any(d == 4 for d in static_block_diameters(inst, gamma, approx))


def static_block_diameters(inst: TcStarInstance, gamma: float, approx=None) -> list[int]:
    return [
        distinguish_3_4(build_H(inst, gamma, k).graph, approx)
        for k in range(block_count(inst.n, gamma))
    ]


def run_incremental(inst: TcStarInstance) -> tuple[HGraph, bool]:
    h = build_H(inst, 1.0, 0)
    return h, distinguish_3_4(h.graph) == 4


def solve_tcstar_incremental(inst: TcStarInstance) -> tuple[bool, OpCounters]:
    h, answer = run_incremental(inst)
    return answer, h.graph.op_count()


@dataclass
class NodeAdditionRun:
    answer: bool
    ledger: CreditLedger
    hgraph: HGraph
    phase_diameters: list[int]
    base_nodes: int


def run_node_addition(
    inst: TcStarInstance,
    alpha: float,
    insert_cost: Callable[[DynGraph], int] | None = None,
) -> NodeAdditionRun:
    """Add one A-color per phase, query, then keep or roll back the phase.

    Each insertion costs one elementary step plus ``insert_cost(graph)``,
    which stands in for the per-insertion work of a dynamic diameter engine.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    g = DynGraph()
    h = HGraph(inst, g)
    h.add_scaffold_nodes()
    for _ in range(g.num_nodes):
        g.charge(1 if insert_cost is None else 1 + insert_cost(g))
    h.insert(h.scaffold_edges(), insert_cost)
    h.insert(h.bc_edges(), insert_cost)
    base_nodes = g.num_nodes
    ledger = CreditLedger(alpha)
    diameters = []
    answer = False
    for i in range(inst.n):
        n_hat = g.num_nodes
        log_start = len(g.log)
        steps_start = g.op_count().elementary_steps
        others = list(h.colors)
        h.add_color_nodes(i)
        for _ in range(2 * inst.n + 1):
            g.charge(1 if insert_cost is None else 1 + insert_cost(g))
        h.insert(h.skip_edges(i, others), insert_cost)
        h.insert(h.attach_edges(i), insert_cost)
        cost = g.op_count().elementary_steps - steps_start
        d = distinguish_3_4(g)
        diameters.append(d)
        answer = answer or d == 4
        ops = len(g.log) - log_start
        if not ledger.record_phase(ops, n_hat, cost, color=i):
            g.rollback(ops)
            h.drop_color(i)
    return NodeAdditionRun(answer, ledger, h, diameters, base_nodes)


def solve_tcstar_node_addition(
    inst: TcStarInstance,
    alpha: float,
    insert_cost: Callable[[DynGraph], int] | None = None,
) -> tuple[bool, CreditLedger]:
    run = run_node_addition(inst, alpha, insert_cost)
    return run.answer, run.ledger


def solve_alpha(tol: float = 1e-15) -> float:
    """Root in (0, 1) of alpha * (2 + alpha) / (1 + alpha) = 1, by bisection."""
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid * (2 + mid) / (1 + mid) < 1:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def subdivide(g: DynGraph, s: int) -> DynGraph:
    """Replace every edge by a path with ``s`` interior nodes; original handles are kept."""
    if s < 0:
        raise ValueError("s must be >= 0")
    out = DynGraph()
    out.insert_nodes(g.num_nodes)
    for e in g.edges:
        prev = e.u
        for _ in range(s):
            mid = out.insert_node()
            out.insert_edge(prev, mid)
            prev = mid
        out.insert_edge(prev, e.v)
    return out


def original_pair_max_distance(g: DynGraph, originals: int) -> float:
    """Largest distance among handles ``0..originals-1``."""
    adj = g.adjacency()
    best = 0
    for src in range(originals):
        dist = bfs_distances(adj, src)
        best = max(best, max(dist[:originals]))
    return best


def solve_tcstar_subdivided(inst: TcStarInstance, s: int) -> tuple[bool, float, float]:
    """Answer from H_{1,0} with every edge subdivided by ``s`` nodes.

    Returns (answer, original-pair max distance, full diameter). Original
    distances scale by s + 1, so the answer is YES iff that distance is 4(s + 1).
    """
    h = build_H(inst, 1.0, 0)
    sub = subdivide(h.graph, s)
    far = original_pair_max_distance(sub, h.graph.num_nodes)
    full = exact_diameter(sub).value
    if far not in (3 * (s + 1), 4 * (s + 1)):
        raise AssertionError(f"original-pair distance {far} not in {{3, 4}} x {s + 1}")
    return far == 4 * (s + 1), far, full
