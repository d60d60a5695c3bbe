"""Incremental s-t maximum flow on integer-capacitated directed graphs.

Inserting an edge only adds capacity, so the current flow stays feasible and
the engine re-augments from it. Re-augmentation runs shortest-augmenting-path
phases (BFS layering, then a blocking flow along the layers) until t is
unreachable in the residual graph.
"""

from __future__ import annotations

from collections import deque

from .dyngraph import DynGraph

MAX_CAPACITY = (1 << 62) - 1


class FlowState:
    def __init__(self, graph: DynGraph, s: int, t: int):
        if not (graph.directed and graph.capacitated):
            raise ValueError("flow needs a directed capacitated graph")
        if s == t:
            raise ValueError("source and sink must differ")
        self.graph = graph
        self.s, self.t = s, t
        self.value = 0
        # arc 2e is edge e, arc 2e+1 its reverse
        self._head: list[int] = []
        self._res: list[int] = []
        self._out: list[list[int]] = [[] for _ in range(graph.num_nodes)]
        for e in graph.edges:
            self._add_arcs(e.u, e.v, e.cap)
        self._augment()

    def add_node(self) -> int:
        h = self.graph.insert_node()
        self._out.append([])
        return h

    def _add_arcs(self, u: int, v: int, cap: int) -> None:
        a = len(self._head)
        self._head += [v, u]
        self._res += [cap, 0]
        self._out[u].append(a)
        self._out[v].append(a + 1)

    def insert_edge(self, u: int, v: int, cap: int) -> None:
        if not isinstance(cap, int) or cap <= 0:
            raise ValueError(f"capacity must be a positive integer, got {cap!r}")
        if cap > MAX_CAPACITY:
            raise OverflowError(f"capacity {cap} exceeds {MAX_CAPACITY}")
        while len(self._out) < self.graph.num_nodes:
            self._out.append([])
        self.graph.insert_edge(u, v, cap)
        self._add_arcs(u, v, cap)
        self._augment()

    def query(self) -> int:
        self.graph.count_query()
        self.graph.charge(1)
        return self.value

    def flow(self, eid: int) -> int:
        """Flow on edge ``eid`` (reverse-arc residual)."""
        return self._res[2 * eid + 1]

    def _levels(self) -> list[int] | None:
        s, t = self.s, self.t
        head, res, out = self._head, self._res, self._out
        level = [-1] * len(out)
        level[s] = 0
        queue = deque([s])
        steps = 0
        while queue:
            x = queue.popleft()
            if level[t] >= 0 and level[x] >= level[t]:
                break
            nl = level[x] + 1
            for a in out[x]:
                steps += 1
                y = head[a]
                if level[y] < 0 and res[a] > 0:
                    level[y] = nl
                    queue.append(y)
        self.graph.charge(steps)
        return level if level[t] >= 0 else None

    def _blocking_flow(self, level: list[int]) -> int:
        s, t = self.s, self.t
        head, res, out = self._head, self._res, self._out
        pos = [0] * len(out)
        pushed_total = 0
        steps = 0
        while True:
            # iterative DFS along level-increasing arcs with current-arc pointers
            path: list[int] = []
            x = s
            while x != t:
                arcs = out[x]
                i = pos[x]
                while i < len(arcs):
                    a = arcs[i]
                    steps += 1
                    y = head[a]
                    if res[a] > 0 and level[y] == level[x] + 1:
                        break
                    i += 1
                pos[x] = i
                if i == len(arcs):
                    if x == s:
                        self.graph.charge(steps)
                        return pushed_total
                    level[x] = -1  # dead end
                    a = path.pop()
                    x = head[a ^ 1]
                    pos[x] += 1
                    continue
                path.append(arcs[i])
                x = head[arcs[i]]
            push = min(res[a] for a in path)
            for a in path:
                res[a] -= push
                res[a ^ 1] += push
            pushed_total += push
            steps += len(path)

    def _augment(self) -> None:
        while True:
            level = self._levels()
            if level is None:
                return
            pushed = self._blocking_flow(level)
            if pushed == 0:
                return
            self.value += pushed


def mf_insert_edge(st: FlowState, u: int, v: int, cap: int) -> None:
    st.insert_edge(u, v, cap)


def mf_query(st: FlowState) -> int:
    return st.query()


def max_flow_value(num_nodes: int, edges, s: int, t: int) -> int:
    """From-scratch value on a fresh graph (used for decremental recomputation)."""
    g = DynGraph(directed=True, capacitated=True)
    g.insert_nodes(num_nodes)
    for u, v, cap in edges:
        g.insert_edge(u, v, cap)
    return FlowState(g, s, t).value
