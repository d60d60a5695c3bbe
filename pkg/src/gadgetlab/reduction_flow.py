"""CNF-SAT through incremental s-t max flow, and bipartite matching as unit flow.

Variables 0..h-1 form the first half, h..2h-1 the second (h = num_vars/2).
Assignment node k of either half gives variable (half offset + b) the value
of bit b of k. An a-node feeds clause c (capacity N) when its half-assignment
falsifies every literal of c on that half; c feeds b-node b (capacity 1) on
the same condition for the second half. Phase i hooks s to a_i, queries, then
adds the shortcut a_i -> t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .dyngraph import DynGraph, reverse_replay
from .flow import FlowState, max_flow_value
from .instances import CnfFormula
from .oracles import GuardViolation, two_color

FLOW_MAX_VARS = 20


@dataclass(frozen=True)
class PhaseResult:
    phase: int  # 1-based
    pre_value: int
    value: int
    satisfiable_hint: bool


@dataclass
class FlowGadget:
    formula: CnfFormula
    N: int
    a: list[int]
    b: list[int]
    c: list[int]
    s: int
    t: int
    state: FlowState
    phase: int = 1
    results: list[PhaseResult] = field(default_factory=list)
    query_positions: list[int] = field(default_factory=list)

    @property
    def graph(self) -> DynGraph:
        return self.state.graph


def _half_masks(clause, lo: int, h: int) -> tuple[int, int]:
    pos = neg = 0
    for var, pol in clause:
        if lo <= var < lo + h:
            if pol:
                pos |= 1 << (var - lo)
            else:
                neg |= 1 << (var - lo)
    return pos, neg


def falsifies(assignment: int, pos: int, neg: int, h: int) -> bool:
    """True when a half-assignment makes every literal of a half-clause false."""
    return not (assignment & pos) and not (~assignment & ((1 << h) - 1) & neg)


def build_flow_base(f: CnfFormula, max_vars: int = FLOW_MAX_VARS) -> FlowGadget:
    if f.num_vars > max_vars:
        raise GuardViolation(f"{f.num_vars} variables exceeds flow guard {max_vars}")
    h = f.num_vars // 2
    N = 1 << h
    g = DynGraph(directed=True, capacitated=True)
    a = g.insert_nodes(N)
    b = g.insert_nodes(N)
    c = g.insert_nodes(len(f.clauses))
    s, t = g.insert_node(), g.insert_node()
    st = FlowState(g, s, t)
    for ci, clause in enumerate(f.clauses):
        pos, neg = _half_masks(clause, 0, h)
        for k in range(N):
            if falsifies(k, pos, neg, h):
                st.insert_edge(a[k], c[ci], N)
    for ci, clause in enumerate(f.clauses):
        pos, neg = _half_masks(clause, h, h)
        for k in range(N):
            if falsifies(k, pos, neg, h):
                st.insert_edge(c[ci], b[k], 1)
    for k in range(N):
        st.insert_edge(b[k], t, 1)
    return FlowGadget(f, N, a, b, c, s, t, st)


def run_flow_phase(gad: FlowGadget) -> PhaseResult:
    i, N = gad.phase, gad.N
    if i > N:
        raise IndexError(f"all {N} phases already run")
    st = gad.state
    pre = st.value
    ai = gad.a[i - 1]
    st.insert_edge(gad.s, ai, N)
    value = st.query()
    gad.query_positions.append(len(gad.graph.log))
    st.insert_edge(ai, gad.t, N)
    res = PhaseResult(i, pre, value, value < i * N)
    gad.results.append(res)
    gad.phase += 1
    return res


def solve_sat_via_flow(f: CnfFormula, early_exit: bool = False) -> bool:
    return run_sat(f, early_exit)[1]


def run_sat(f: CnfFormula, early_exit: bool = False) -> tuple[FlowGadget, bool]:
    gad = build_flow_base(f)
    fired = False
    while gad.phase <= gad.N:
        if run_flow_phase(gad).satisfiable_hint:
            fired = True
            if early_exit:
                break
    return gad, fired


def decremental_values(gad: FlowGadget) -> list[int]:
    """Max-flow values at the mirrored query points of a reverse replay.

    Each value is recomputed from scratch on the surviving graph.
    """
    g = gad.graph.copy()
    schedule = iter(reverse_replay(g))
    values = []
    for pos in reversed(gad.query_positions):
        while len(g.log) > pos:
            g.delete(next(schedule))
        values.append(max_flow_value(g.num_nodes, g.edges, gad.s, gad.t))
    return values


def matching_to_st_flow(
    edges: Sequence[tuple[int, int]],
    left: Sequence[int] | None = None,
    right: Sequence[int] | None = None,
) -> tuple[list[tuple[int, int, int]], int, int]:
    """Unit-capacity s-t network whose max flow equals the max matching size.

    Returns ``(arcs, s, t)``; s and t are fresh labels after the largest node.
    """
    edges = [(u, v) for u, v, *_ in edges]
    if left is None:
        side = two_color([], edges)
        left = sorted(x for x, sd in side.items() if sd == 0)
        right = sorted(x for x, sd in side.items() if sd == 1)
    elif right is None:
        ends = {x for e in edges for x in e}
        right = sorted(ends - set(left))
    left_set, right_set = set(left), set(right)
    if left_set & right_set:
        raise ValueError("sides overlap")
    arcs = []
    for u, v in edges:
        if u in left_set and v in right_set:
            arcs.append((u, v, 1))
        elif v in left_set and u in right_set:
            arcs.append((v, u, 1))
        else:
            raise ValueError(f"edge ({u}, {v}) does not cross the bipartition")
    top = max(left_set | right_set, default=-1)
    s, t = top + 1, top + 2
    arcs += [(s, x, 1) for x in sorted(left_set)]
    arcs += [(y, t, 1) for y in sorted(right_set)]
    return arcs, s, t
