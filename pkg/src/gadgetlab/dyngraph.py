"""Append-only dynamic graph with an operation log, rollback and op counters.

Every reduction drives one of these. Node handles are allocated
sequentially; rolling back a node insertion rewinds the allocator, so the
surviving log always replays to the identical graph.

Deletions happen only in reverse insertion order (see ``reverse_replay``);
this mirrors how decremental instances are derived from incremental ones.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Iterator, NamedTuple

NODE = "N"
EDGE = "E"


class Edge(NamedTuple):
    u: int
    v: int
    cap: int | None = None


@dataclass(frozen=True)
class LogEntry:
    kind: str  # NODE or EDGE
    payload: int | Edge  # allocated handle, or the inserted edge

    def to_line(self) -> str:
        if self.kind == NODE:
            return NODE
        e = self.payload
        return f"E {e.u} {e.v}" + ("" if e.cap is None else f" {e.cap}")


@dataclass(frozen=True)
class OpCounters:
    """Counter snapshot. ``insertions`` counts edges; node inserts are separate."""

    insertions: int = 0
    node_insertions: int = 0
    deletions: int = 0
    queries: int = 0
    elementary_steps: int = 0

    def __sub__(self, other: OpCounters) -> OpCounters:
        return OpCounters(
            self.insertions - other.insertions,
            self.node_insertions - other.node_insertions,
            self.deletions - other.deletions,
            self.queries - other.queries,
            self.elementary_steps - other.elementary_steps,
        )

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


class UnknownHandle(KeyError):
    pass


class DynGraph:
    def __init__(self, directed: bool = False, capacitated: bool = False):
        self.directed = directed
        self.capacitated = capacitated
        self.num_nodes = 0
        self.edges: list[Edge] = []
        # edge ids incident to each node (outgoing only when directed)
        self.adj: list[list[int]] = []
        self.log: list[LogEntry] = []
        self._edge_keys: dict[tuple[int, int], int] = {}
        self._tally = [0, 0, 0, 0, 0]  # OpCounters field order

    def charge(self, steps: int = 1) -> None:
        self._tally[4] += steps

    def count_query(self) -> None:
        self._tally[3] += 1

    def reset_counters(self) -> None:
        self._tally = [0, 0, 0, 0, 0]

    def op_count(self) -> OpCounters:
        return OpCounters(*self._tally)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def nodes(self) -> range:
        return range(self.num_nodes)

    def _key(self, u: int, v: int) -> tuple[int, int]:
        return (u, v) if self.directed or u <= v else (v, u)

    def has_edge(self, u: int, v: int) -> bool:
        return self._key(u, v) in self._edge_keys

    def insert_node(self) -> int:
        h = self.num_nodes
        self.num_nodes += 1
        self.adj.append([])
        self.log.append(LogEntry(NODE, h))
        self._tally[1] += 1
        return h

    def insert_nodes(self, count: int) -> list[int]:
        return [self.insert_node() for _ in range(count)]

    def insert_edge(self, u: int, v: int, cap: int | None = None) -> int:
        for h in (u, v):
            if not 0 <= h < self.num_nodes:
                raise UnknownHandle(h)
        if self.capacitated != (cap is not None):
            raise ValueError(
                "capacity required on a capacitated graph"
                if self.capacitated
                else "capacity supplied to an uncapacitated graph"
            )
        eid = len(self.edges)
        edge = Edge(u, v, cap)
        self.edges.append(edge)
        self.adj[u].append(eid)
        if not self.directed and u != v:
            self.adj[v].append(eid)
        key = self._key(u, v)
        self._edge_keys[key] = self._edge_keys.get(key, 0) + 1
        self.log.append(LogEntry(EDGE, edge))
        self._tally[0] += 1
        return eid

    def _pop(self) -> LogEntry:
        entry = self.log.pop()
        if entry.kind == NODE:
            self.num_nodes -= 1
            self.adj.pop()
        else:
            edge = self.edges.pop()
            self.adj[edge.u].pop()
            if not self.directed and edge.u != edge.v:
                self.adj[edge.v].pop()
            key = self._key(edge.u, edge.v)
            if self._edge_keys[key] == 1:
                del self._edge_keys[key]
            else:
                self._edge_keys[key] -= 1
        return entry

    def rollback(self, k: int) -> list[LogEntry]:
        """Undo the last ``k`` log entries. Spent elementary steps stay spent."""
        if not 0 <= k <= len(self.log):
            raise ValueError(f"cannot roll back {k} of {len(self.log)} entries")
        return [self._pop() for _ in range(k)]

    def delete(self, entry: LogEntry) -> None:
        """Apply one step of a reverse-replay schedule; ``entry`` must be the newest."""
        if not self.log or self.log[-1] != entry:
            raise ValueError("deletions must follow reverse insertion order")
        self._pop()
        self._tally[2] += 1

    def neighbors(self, v: int) -> Iterator[int]:
        for eid in self.adj[v]:
            e = self.edges[eid]
            yield e.v if e.u == v else e.u

    def adjacency(self) -> list[list[int]]:
        return [list(self.neighbors(v)) for v in range(self.num_nodes)]

    def state(self) -> tuple[int, tuple[Edge, ...]]:
        """Hashable (node count, edge list) snapshot."""
        return self.num_nodes, tuple(self.edges)

    def copy(self) -> DynGraph:
        return DynGraph.replay(self.log, self.directed, self.capacitated)

    @classmethod
    def replay(cls, log: Iterable[LogEntry], directed: bool = False,
               capacitated: bool = False) -> DynGraph:
        g = cls(directed, capacitated)
        for entry in log:
            if entry.kind == NODE:
                h = g.insert_node()
                if h != entry.payload:
                    raise ValueError(f"log allocates handle {entry.payload}, replay got {h}")
            else:
                g.insert_edge(*entry.payload)
        return g

    def dump_log(self) -> str:
        return "".join(entry.to_line() + "\n" for entry in self.log)

    @classmethod
    def load_log(cls, text: str, directed: bool = False,
                 capacitated: bool = False) -> DynGraph:
        entries = []
        node_count = 0
        for lineno, line in enumerate(text.splitlines(), 1):
            fields = line.split()
            if not fields:
                continue
            if fields == [NODE]:
                entries.append(LogEntry(NODE, node_count))
                node_count += 1
            elif fields[0] == EDGE and len(fields) in (3, 4):
                nums = [int(f) for f in fields[1:]]
                entries.append(LogEntry(EDGE, Edge(nums[0], nums[1],
                                                   nums[2] if len(nums) == 3 else None)))
            else:
                raise ValueError(f"line {lineno}: bad log record {line!r}")
        return cls.replay(entries, directed, capacitated)


def reverse_replay(g: DynGraph) -> list[LogEntry]:
    """Deletion schedule: the log's insertions, newest first."""
    return g.log[::-1]


def op_count(g: DynGraph) -> OpCounters:
    return g.op_count()
