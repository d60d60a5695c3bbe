"""OuMv through incremental bipartite matching.

Six families S, A, B, C, D, T of n (left, right) node pairs. A, B, C, D
start with their pair edges, B and C are joined by the ones of M. Phase i
threads s^r_i - a - b - c - d - t^l_i through the vectors; the matching
grows past 4n + 2i exactly when u^i M v^i = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dyngraph import DynGraph, reverse_replay
from .instances import BitMatrix, OuMvInstance
from .matching import LEFT, RIGHT, MatchingState

FAMILIES = "SABCDT"


@dataclass
class MatchGadget:
    n: int
    state: MatchingState
    # handles[family] = (left handles, right handles), indexed by i
    handles: dict[str, tuple[list[int], list[int]]]
    phase: int = 0
    queried: list[int] = field(default_factory=list)
    pre_phase: list[int] = field(default_factory=list)
    query_positions: list[int] = field(default_factory=list)

    @property
    def graph(self) -> DynGraph:
        return self.state.graph

    def l(self, family: str, i: int) -> int:
        return self.handles[family][0][i]

    def r(self, family: str, i: int) -> int:
        return self.handles[family][1][i]

    def expected_size(self, i: int, bit: int) -> int:
        return 4 * self.n + 2 * i + bit

    def _add(self, u: int, v: int) -> None:
        assert not self.graph.has_edge(u, v), f"duplicate gadget edge ({u}, {v})"
        self.state.insert_edge(u, v)


def build_match_base(matrix: BitMatrix) -> MatchGadget:
    n = matrix.n
    st = MatchingState()
    handles = {}
    for fam in FAMILIES:
        left, right = [], []
        for _ in range(n):
            left.append(st.add_node(LEFT))
            right.append(st.add_node(RIGHT))
        handles[fam] = (left, right)
    gad = MatchGadget(n, st, handles)
    for fam in "ABCD":
        for i in range(n):
            gad._add(gad.l(fam, i), gad.r(fam, i))
    for i in range(n):
        for j in range(n):
            if matrix.bits[i][j]:
                gad._add(gad.r("B", i), gad.l("C", j))
    return gad


def run_match_phase(gad: MatchGadget, u, v) -> int:
    i, n = gad.phase, gad.n
    if i >= n:
        raise IndexError(f"all {n} phases already run")
    if len(u) != n or len(v) != n:
        raise ValueError(f"vectors must have length {n}")
    gad.pre_phase.append(gad.state.matched)
    for j in range(n):
        if u[j]:
            gad._add(gad.r("A", i), gad.l("B", j))
    for j in range(n):
        if v[j]:
            gad._add(gad.r("C", j), gad.l("D", i))
    gad._add(gad.r("S", i), gad.l("A", i))
    gad._add(gad.r("D", i), gad.l("T", i))
    size = gad.state.size()
    gad.queried.append(size)
    gad.query_positions.append(len(gad.graph.log))
    gad._add(gad.l("S", i), gad.r("S", i))
    gad._add(gad.l("T", i), gad.r("T", i))
    gad.phase += 1
    return _decide(gad, i, size)


def _decide(gad: MatchGadget, i: int, size: int) -> int:
    if size == gad.expected_size(i, 1):
        return 1
    if size == gad.expected_size(i, 0):
        return 0
    raise AssertionError(f"phase {i}: matching size {size} breaks the size law")


def solve_oumv_via_matching(inst: OuMvInstance) -> list[bool]:
    return [bool(b) for b in run_oumv(inst)[1]]


def run_oumv(inst: OuMvInstance) -> tuple[MatchGadget, list[int]]:
    gad = build_match_base(inst.matrix)
    bits = [run_match_phase(gad, u, v) for u, v in inst.pairs]
    return gad, bits


def closed_form_insertions(inst: OuMvInstance) -> int:
    """Edge insertions of a full run: 4n pair edges, |M| matrix edges, per-phase edges."""
    n = inst.n
    return 4 * n + inst.matrix.ones() + sum(sum(u) + sum(v) + 4 for u, v in inst.pairs)


def decremental_bits(gad: MatchGadget) -> list[int]:
    """Delete the finished gadget's insertions newest-first, querying at mirrored points.

    Query points are the incremental ones visited in reverse, so the result is
    the incremental bit sequence reversed.
    """
    if gad.phase != gad.n:
        raise ValueError("run every phase before the decremental replay")
    st = gad.state
    targets = list(enumerate(gad.query_positions))[::-1]
    bits = []
    schedule = iter(reverse_replay(gad.graph))
    for i, pos in targets:
        while len(gad.graph.log) > pos:
            st.delete_last(next(schedule))
        bits.append(_decide(gad, i, st.size()))
    return bits
