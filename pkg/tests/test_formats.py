import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gadgetlab.formats import (
    FormatError,
    cnf_from_dimacs,
    cnf_to_dimacs,
    digest,
    load_instance,
    to_json,
)
from gadgetlab.instances import CnfFormula, gen_cnf, gen_oumv, gen_tcstar, plant_tcstar


def _roundtrip(tmp_path, inst):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(to_json(inst)))
    return load_instance(path)


def test_json_roundtrips(tmp_path):
    for inst in (gen_oumv(5, 0.4, 1), gen_cnf(6, 12, 3, 2), gen_tcstar(3, 2, 2, 0.5, 3),
                 plant_tcstar(3, 2, 2, 4, (0, 1, 2))):
        assert _roundtrip(tmp_path, inst) == inst


def test_digest_stable():
    a, b = gen_oumv(4, 0.5, 42), gen_oumv(4, 0.5, 42)
    assert digest(to_json(a)) == digest(to_json(b))
    assert digest(to_json(a)) != digest(to_json(gen_oumv(4, 0.5, 43)))


def test_dimacs_text():
    f = CnfFormula.from_ints(2, [[1, -2], [-1]])
    text = cnf_to_dimacs(f)
    assert text.splitlines()[1:] == ["p cnf 2 2", "1 -2 0", "-1 0"]
    assert cnf_from_dimacs(text) == f


@settings(max_examples=100)
@given(st.integers(1, 5), st.integers(0, 12), st.integers(0, 10**6))
def test_dimacs_roundtrip(half, clauses, seed):
    f = gen_cnf(2 * half, clauses, min(3, 2 * half), seed)
    assert cnf_from_dimacs(cnf_to_dimacs(f)) == f


def test_dimacs_errors():
    with pytest.raises(FormatError):
        cnf_from_dimacs("1 2 0\n")
    with pytest.raises(FormatError):
        cnf_from_dimacs("c nothing\n")
    with pytest.raises(FormatError):
        cnf_from_dimacs("p dnf 2 1\n1 0\n")


def test_load_rejects_wrong_problem_and_version(tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps(to_json(gen_oumv(2, 0.5, 0))))
    with pytest.raises(FormatError):
        load_instance(path, "tcstar")
    doc = to_json(gen_oumv(2, 0.5, 0))
    doc["schema_version"] = 99
    path.write_text(json.dumps(doc))
    with pytest.raises(FormatError):
        load_instance(path)
    path.write_text("{not json")
    with pytest.raises(FormatError):
        load_instance(path)


def test_load_dimacs_by_content(tmp_path):
    path = tmp_path / "f.cnf"
    f = gen_cnf(4, 6, 3, 9)
    path.write_text(cnf_to_dimacs(f))
    assert load_instance(path) == f == load_instance(path, "cnf")
