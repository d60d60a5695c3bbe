"""Source-problem instances: OuMv, CNF-SAT and structured triangle collection.

Instances are frozen values. Generators are pure functions of their
arguments; every random draw goes through a ``random.Random(seed)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

Vector = tuple[bool, ...]
Literal = tuple[int, bool]  # (variable index, polarity); True means positive
Clause = frozenset  # frozenset[Literal]
BNode = tuple[int, int, int]  # (color, j, x)


@dataclass(frozen=True)
class BitMatrix:
    n: int
    bits: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("matrix dimension must be >= 1")
        if len(self.bits) != self.n or any(len(row) != self.n for row in self.bits):
            raise ValueError(f"matrix must be {self.n}x{self.n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | bool]]) -> BitMatrix:
        return cls(len(rows), tuple(tuple(bool(b) for b in row) for row in rows))

    def __getitem__(self, ij: tuple[int, int]) -> bool:
        i, j = ij
        return self.bits[i][j]

    def ones(self) -> int:
        return sum(sum(row) for row in self.bits)


@dataclass(frozen=True)
class OuMvInstance:
    matrix: BitMatrix
    pairs: tuple[tuple[Vector, Vector], ...]

    def __post_init__(self) -> None:
        n = self.matrix.n
        if len(self.pairs) != n:
            raise ValueError(f"expected {n} vector pairs, got {len(self.pairs)}")
        for u, v in self.pairs:
            if len(u) != n or len(v) != n:
                raise ValueError(f"vector length must be {n}")

    @property
    def n(self) -> int:
        return self.matrix.n

    @classmethod
    def build(cls, rows, pairs) -> OuMvInstance:
        """Build from plain 0/1 lists: ``rows`` and ``[(u, v), ...]``."""
        return cls(
            BitMatrix.from_rows(rows),
            tuple((tuple(map(bool, u)), tuple(map(bool, v))) for u, v in pairs),
        )


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        if self.num_vars < 2 or self.num_vars % 2:
            raise ValueError(f"num_vars must be even and >= 2, got {self.num_vars}")
        for clause in self.clauses:
            seen = {}
            for var, pol in clause:
                if not 0 <= var < self.num_vars:
                    raise ValueError(f"literal variable {var} out of range")
                if seen.setdefault(var, pol) != pol:
                    raise ValueError(f"clause contains both polarities of x{var}")

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> CnfFormula:
        """DIMACS-style signed literals, 1-based: ``[[1, -2], [2]]``."""
        return cls(
            num_vars,
            tuple(frozenset((abs(l) - 1, l > 0) for l in clause) for clause in clauses),
        )

    def to_ints(self) -> list[list[int]]:
        return [
            [(v + 1) if pol else -(v + 1) for v, pol in sorted(clause)]
            for clause in self.clauses
        ]

    def satisfied_by(self, assignment: int) -> bool:
        """``assignment`` bit ``v`` is the value of variable ``v``."""
        return all(
            any(bool(assignment >> v & 1) == pol for v, pol in clause)
            for clause in self.clauses
        )


@dataclass(frozen=True)
class TcStarInstance:
    """Tripartite colored graph with A-nodes a^i_j, B-nodes b^i_{j,x}, C-nodes c^i_{j,x}.

    ``ab[(i, j, i2)] = x`` means the edge (a^i_j, b^{i2}_{j,x}); ``ac`` is the
    same for C. ``bc`` holds pairs ``((i, j, x), (i2, j2, y))`` of a B-node and
    a C-node.
    """

    n: int
    delta: int
    p: int
    ab: Mapping[tuple[int, int, int], int]
    ac: Mapping[tuple[int, int, int], int]
    bc: frozenset = field(default_factory=frozenset)

    def coords(self) -> Iterable[tuple[int, int, int]]:
        return product(range(self.n), range(self.delta), range(self.n))

    def side_nodes(self) -> list[BNode]:
        """All (color, j, x) coordinates of one of the B/C partitions."""
        return list(product(range(self.n), range(self.delta), range(self.p)))

    def has_triangle(self, i: int, alpha: int, beta: int) -> bool:
        return any(
            ((alpha, j, self.ab[i, j, alpha]), (beta, j, self.ac[i, j, beta])) in self.bc
            for j in range(self.delta)
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple

    def __str__(self) -> str:
        return f"{self.kind} at {self.where}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_tcstar(inst: TcStarInstance) -> ValidationReport:
    """Check totality of the A-B / A-C choice maps and the same-``j`` rule on B-C edges."""
    out: list[Violation] = []
    if min(inst.n, inst.delta, inst.p) < 1:
        out.append(Violation("bad-parameters", (inst.n, inst.delta, inst.p)))
        return ValidationReport(tuple(out))
    domain = set(inst.coords())
    for name, table in (("ab", inst.ab), ("ac", inst.ac)):
        for key in sorted(domain - set(table)):
            out.append(Violation(f"{name}-missing", key))
        for key in sorted(set(table) - domain):
            out.append(Violation(f"{name}-outside-domain", key))
        for key in sorted(domain & set(table)):
            if not 0 <= table[key] < inst.p:
                out.append(Violation(f"{name}-x-out-of-range", key + (table[key],)))

    def in_range(node) -> bool:
        i, j, x = node
        return 0 <= i < inst.n and 0 <= j < inst.delta and 0 <= x < inst.p

    for b, c in sorted(inst.bc):
        if not (in_range(b) and in_range(c)):
            out.append(Violation("bc-out-of-range", (b, c)))
        elif b[1] != c[1]:
            out.append(Violation("bc-j-mismatch", (b, c)))
    return ValidationReport(tuple(out))


def _check_probability(density: float) -> None:
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")


def gen_oumv(n: int, density: float, seed: int) -> OuMvInstance:
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_probability(density)
    rng = random.Random(seed)

    def vec() -> Vector:
        return tuple(rng.random() < density for _ in range(n))

    matrix = BitMatrix(n, tuple(vec() for _ in range(n)))
    return OuMvInstance(matrix, tuple((vec(), vec()) for _ in range(n)))


def gen_cnf(num_vars: int, num_clauses: int, width: int, seed: int) -> CnfFormula:
    if num_vars < 2 or num_vars % 2:
        raise ValueError(f"num_vars must be even and >= 2, got {num_vars}")
    if not 1 <= width <= num_vars:
        raise ValueError(f"width must lie in [1, {num_vars}]")
    if num_clauses < 0:
        raise ValueError("num_clauses must be >= 0")
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        variables = rng.sample(range(num_vars), width)
        clauses.append(frozenset((v, rng.random() < 0.5) for v in variables))
    return CnfFormula(num_vars, tuple(clauses))


def gen_tcstar(n: int, delta: int, p: int, bc_density: float, seed: int) -> TcStarInstance:
    if min(n, delta, p) < 1:
        raise ValueError("n, delta and p must be >= 1")
    _check_probability(bc_density)
    rng = random.Random(seed)
    keys = list(product(range(n), range(delta), range(n)))
    ab = {key: rng.randrange(p) for key in keys}
    ac = {key: rng.randrange(p) for key in keys}
    bc = set()
    # only same-j pairs are ever candidates
    for j in range(delta):
        for bi, bx in product(range(n), range(p)):
            for ci, cy in product(range(n), range(p)):
                if rng.random() < bc_density:
                    bc.add(((bi, j, bx), (ci, j, cy)))
    return TcStarInstance(n, delta, p, ab, ac, frozenset(bc))


def plant_tcstar(
    n: int,
    delta: int,
    p: int,
    seed: int,
    target: tuple[int, int, int],
    bc_density: float = 0.5,
) -> TcStarInstance:
    """Random instance in which the color triple ``target`` has no triangle."""
    if any(not 0 <= c < n for c in target):
        raise ValueError(f"target {target} outside [0, {n})")
    base = gen_tcstar(n, delta, p, bc_density, seed)
    i, alpha, beta = target
    doomed = {
        ((alpha, j, base.ab[i, j, alpha]), (beta, j, base.ac[i, j, beta]))
        for j in range(delta)
    }
    return TcStarInstance(n, delta, p, base.ab, base.ac, base.bc - doomed)
