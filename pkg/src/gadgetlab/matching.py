"""Incremental maximum-cardinality bipartite matching.

After each edge insertion a single alternating BFS is run from every free
left vertex (lowest handle first). One search suffices because inserting
one edge raises the maximum by at most one. The search cannot be limited
to the new edge's free endpoints: with both endpoints matched an augmenting
path may still run mate(l) - l - r - mate(r).
"""

from __future__ import annotations

from collections import deque

from .dyngraph import DynGraph, LogEntry, NODE

LEFT, RIGHT = 0, 1


class MatchingState:
    def __init__(self, graph: DynGraph | None = None):
        self.graph = graph if graph is not None else DynGraph()
        if self.graph.directed:
            raise ValueError("matching needs an undirected graph")
        self.side: list[int] = []
        self.partner: list[int | None] = []
        self.matched = 0

    def add_node(self, side: int) -> int:
        if side not in (LEFT, RIGHT):
            raise ValueError(f"side must be {LEFT} or {RIGHT}")
        h = self.graph.insert_node()
        self.side.append(side)
        self.partner.append(None)
        return h

    def insert_edge(self, u: int, v: int) -> int:
        g = self.graph
        for h in (u, v):
            if not 0 <= h < len(self.side):
                raise KeyError(h)
        if self.side[u] == self.side[v]:
            raise ValueError(f"edge ({u}, {v}) joins two nodes on the same side")
        g.insert_edge(u, v)
        self._augment()
        return self.matched

    def size(self) -> int:
        self.graph.count_query()
        self.graph.charge(1)
        return self.matched

    def delete_last(self, entry: LogEntry) -> int:
        """Remove the newest log entry (reverse-replay step) and restore maximality."""
        g = self.graph
        if entry.kind == NODE:
            g.delete(entry)
            self.side.pop()
            self.partner.pop()
            return self.matched
        u, v, _ = entry.payload
        g.delete(entry)
        if self.partner[u] == v:
            self.partner[u] = self.partner[v] = None
            self.matched -= 1
            self._augment()
        return self.matched

    def _augment(self) -> bool:
        g = self.graph
        side, partner = self.side, self.partner
        edges, adj = g.edges, g.adj
        parent: dict[int, int] = {}  # right vertex -> left vertex that reached it
        seen_left = set()
        queue = deque()
        for x in range(len(side)):
            if side[x] == LEFT and partner[x] is None and adj[x]:
                queue.append(x)
                seen_left.add(x)
        steps = 0
        found = None
        while queue and found is None:
            x = queue.popleft()
            for eid in adj[x]:
                steps += 1
                e = edges[eid]
                y = e.v if e.u == x else e.u
                if y in parent:
                    continue
                parent[y] = x
                z = partner[y]
                if z is None:
                    found = y
                    break
                if z not in seen_left:
                    seen_left.add(z)
                    queue.append(z)
        g.charge(steps)
        if found is None:
            return False
        y = found
        while y is not None:
            x = parent[y]
            nxt = partner[x]
            partner[x], partner[y] = y, x
            y = nxt
        self.matched += 1
        return True

    def matching(self) -> list[tuple[int, int]]:
        return [(x, y) for x, y in enumerate(self.partner)
                if y is not None and self.side[x] == LEFT]


def mm_insert_edge(st: MatchingState, u: int, v: int) -> int:
    return st.insert_edge(u, v)


def mm_size(st: MatchingState) -> int:
    return st.size()
