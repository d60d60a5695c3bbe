"""Canonical on-disk formats for instances.

Every JSON document carries ``schema_version``. CNF formulas are also
read and written as DIMACS text; the version rides in a comment line.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .instances import CnfFormula, OuMvInstance, TcStarInstance

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical(obj).encode()).hexdigest()


def _bits(vec) -> list[int]:
    return [int(b) for b in vec]


def oumv_to_json(inst: OuMvInstance) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "problem": "oumv",
        "n": inst.n,
        "matrix": [_bits(row) for row in inst.matrix.bits],
        "pairs": [[_bits(u), _bits(v)] for u, v in inst.pairs],
    }


def oumv_from_json(doc: dict) -> OuMvInstance:
    _check_version(doc)
    inst = OuMvInstance.build(doc["matrix"], doc["pairs"])
    if inst.n != doc["n"]:
        raise FormatError(f"n={doc['n']} disagrees with a {inst.n}x{inst.n} matrix")
    return inst


def cnf_to_json(f: CnfFormula) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "problem": "cnf",
        "num_vars": f.num_vars,
        "clauses": f.to_ints(),
    }


def cnf_from_json(doc: dict) -> CnfFormula:
    _check_version(doc)
    return CnfFormula.from_ints(doc["num_vars"], doc["clauses"])


def cnf_to_dimacs(f: CnfFormula) -> str:
    lines = [f"c schema_version {SCHEMA_VERSION}", f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(map(str, clause + [0])) for clause in f.to_ints()]
    return "\n".join(lines) + "\n"


def cnf_from_dimacs(text: str) -> CnfFormula:
    num_vars = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"line {lineno}: bad problem line {line!r}")
            num_vars = int(parts[2])
            continue
        if num_vars is None:
            raise FormatError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if num_vars is None:
        raise FormatError("missing 'p cnf' line")
    return CnfFormula.from_ints(num_vars, clauses)


def tcstar_to_json(inst: TcStarInstance) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "problem": "tcstar",
        "n": inst.n,
        "delta": inst.delta,
        "p": inst.p,
        "ab": [[i, j, i2, x] for (i, j, i2), x in sorted(inst.ab.items())],
        "ac": [[i, j, i2, y] for (i, j, i2), y in sorted(inst.ac.items())],
        "bc": [[list(b), list(c)] for b, c in sorted(inst.bc)],
    }


def tcstar_from_json(doc: dict) -> TcStarInstance:
    _check_version(doc)
    ab = {(i, j, i2): x for i, j, i2, x in doc["ab"]}
    ac = {(i, j, i2): y for i, j, i2, y in doc["ac"]}
    bc = frozenset((tuple(b), tuple(c)) for b, c in doc["bc"])
    return TcStarInstance(doc["n"], doc["delta"], doc["p"], ab, ac, bc)


def _check_version(doc: dict) -> None:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise FormatError(f"unsupported schema_version {version!r}")


_READERS = {"oumv": oumv_from_json, "cnf": cnf_from_json, "tcstar": tcstar_from_json}


def load_instance(path: str | Path, problem: str | None = None):
    """Load any instance file; DIMACS is recognised by content."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if not stripped.startswith("{"):
        if problem not in (None, "cnf"):
            raise FormatError(f"{path}: expected a JSON {problem} instance")
        return cnf_from_dimacs(text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    kind = doc.get("problem", problem)
    if problem is not None and kind != problem:
        raise FormatError(f"{path}: holds a {kind!r} instance, expected {problem!r}")
    if kind not in _READERS:
        raise FormatError(f"{path}: unknown problem {kind!r}")
    try:
        return _READERS[kind](doc)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: malformed {kind} document ({exc})") from exc


def to_json(inst) -> dict:
    if isinstance(inst, OuMvInstance):
        return oumv_to_json(inst)
    if isinstance(inst, CnfFormula):
        return cnf_to_json(inst)
    if isinstance(inst, TcStarInstance):
        return tcstar_to_json(inst)
    raise TypeError(f"no format for {type(inst).__name__}")
