import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gadgetlab.instances import CnfFormula, OuMvInstance, TcStarInstance, gen_tcstar, gen_cnf
from gadgetlab.oracles import (
    GuardViolation,
    apsp_bfs_oracle,
    max_flow_oracle,
    max_matching_exhaustive,
    max_matching_oracle,
    min_cut_enumeration,
    oumv_oracle,
    sat_oracle,
    tcstar_oracle,
)


def test_oumv_oracle_examples():
    zero = OuMvInstance.build([[0, 0], [0, 0]], [([1, 1], [1, 1]), ([1, 0], [0, 1])])
    assert oumv_oracle(zero) == [False, False]
    ones = OuMvInstance.build([[1, 1], [1, 1]], [([1, 1], [1, 1])] * 2)
    assert oumv_oracle(ones) == [True, True]
    # only M[0][1] is selected by u=(1,0), v=(0,1), and it is 0
    ident = OuMvInstance.build([[1, 0], [0, 1]], [([1, 0], [0, 1]), ([1, 1], [1, 0])])
    assert oumv_oracle(ident) == [False, True]


def test_sat_oracle_examples():
    assert sat_oracle(CnfFormula(2))
    assert not sat_oracle(CnfFormula.from_ints(2, [[1], [-1]]))
    assert sat_oracle(CnfFormula.from_ints(2, [[1, 2], [-1, -2]]))


def test_sat_oracle_guard():
    with pytest.raises(GuardViolation):
        sat_oracle(CnfFormula(26))


def test_sat_oracle_accepts_supplied_witnesses():
    for seed in range(60):
        f = gen_cnf(8, 30, 3, seed)
        rng = random.Random(seed)
        witnesses = [x for x in rng.sample(range(256), 64) if f.satisfied_by(x)]
        if witnesses:
            assert sat_oracle(f)


def test_tcstar_oracle_singletons():
    yes = TcStarInstance(1, 1, 1, {(0, 0, 0): 0}, {(0, 0, 0): 0}, frozenset())
    no = TcStarInstance(1, 1, 1, {(0, 0, 0): 0}, {(0, 0, 0): 0},
                        frozenset({((0, 0, 0), (0, 0, 0))}))
    assert tcstar_oracle(no).answer is False and tcstar_oracle(no).witnesses == ()
    assert tcstar_oracle(yes).answer is True and tcstar_oracle(yes).witnesses == ((0, 0, 0),)


def test_tcstar_oracle_guard():
    with pytest.raises(GuardViolation):
        tcstar_oracle(gen_tcstar(17, 1, 1, 0.1, 0))


def test_tcstar_oracle_x_relabeling_invariant():
    inst = gen_tcstar(4, 2, 3, 0.5, 21)
    perm = {j: random.Random(j).sample(range(3), 3) for j in range(2)}  # per-j x relabel
    ab = {(i, j, i2): perm[j][x] for (i, j, i2), x in inst.ab.items()}
    ac = {(i, j, i2): perm[j][x] for (i, j, i2), x in inst.ac.items()}
    bc = frozenset(((b[0], b[1], perm[b[1]][b[2]]), (c[0], c[1], perm[c[1]][c[2]]))
                   for b, c in inst.bc)
    relabeled = TcStarInstance(4, 2, 3, ab, ac, bc)
    assert tcstar_oracle(relabeled).witnesses == tcstar_oracle(inst).witnesses


def test_matching_oracle_examples():
    assert max_matching_oracle([], left=[]) == 0
    disjoint = [(2 * k, 2 * k + 1) for k in range(5)]
    assert max_matching_oracle(disjoint) == 5
    path = [(0, 1), (1, 2), (2, 3)]
    assert max_matching_exhaustive(path) == 2
    assert max_matching_oracle(path) == 2


def test_matching_oracle_rejects_odd_cycle():
    with pytest.raises(ValueError):
        max_matching_oracle([(0, 1), (1, 2), (2, 0)])
    with pytest.raises(ValueError):
        max_matching_oracle([(0, 1)], left=[0, 1])


@st.composite
def small_bipartite(draw, max_edges=12):
    nl, nr = draw(st.integers(1, 6)), draw(st.integers(1, 6))
    pairs = list(itertools.product(range(nl), range(nl, nl + nr)))
    edges = draw(st.lists(st.sampled_from(pairs), max_size=max_edges, unique=True))
    return edges, list(range(nl))


@settings(max_examples=300, deadline=None)
@given(small_bipartite())
def test_matching_oracle_vs_exhaustive(graph):
    edges, left = graph
    assert max_matching_oracle(edges, left) == max_matching_exhaustive(edges)


def test_flow_oracle_examples():
    assert max_flow_oracle([("s", "a", 3)], "s", "t") == 0
    assert max_flow_oracle([("s", "t", 7)], "s", "t") == 7
    diamond = [("s", "a", 3), ("s", "b", 2), ("a", "t", 2), ("b", "t", 3)]
    nodes = ["s", "a", "b", "t"]
    assert min_cut_enumeration(nodes, diamond, "s", "t") == 4
    assert max_flow_oracle(diamond, "s", "t") == 4


def test_flow_oracle_rejects_negative():
    with pytest.raises(ValueError):
        max_flow_oracle([(0, 1, -1)], 0, 1)
    with pytest.raises(ValueError):
        max_flow_oracle([], 0, 0)


@st.composite
def small_network(draw):
    n = draw(st.integers(2, 12))
    arcs = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, 9)),
        max_size=30,
    ))
    return n, [(u, v, c) for u, v, c in arcs if u != v]


@settings(max_examples=300, deadline=None)
@given(small_network())
def test_flow_oracle_equals_min_cut(net):
    n, arcs = net
    assert max_flow_oracle(arcs, 0, n - 1) == min_cut_enumeration(range(n), arcs, 0, n - 1)


def test_apsp_examples():
    assert apsp_bfs_oracle([0], []).diameter == 0
    path = [(k, k + 1) for k in range(4)]
    assert apsp_bfs_oracle(range(5), path).diameter == 4
    assert apsp_bfs_oracle(range(3), [(0, 1)]).diameter == math.inf
