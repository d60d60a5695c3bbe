"""Reduction-vs-oracle checks for single instances, and seeded instance draws.

Each ``check_*`` returns a list of human-readable failures (empty on success).
"""

from __future__ import annotations

import random

from .diameter import exact_diameter
from .instances import (
    CnfFormula,
    OuMvInstance,
    TcStarInstance,
    gen_cnf,
    gen_oumv,
    gen_tcstar,
    plant_tcstar,
)
from .oracles import oumv_oracle, sat_oracle, tcstar_oracle
from .reduction_diameter import (
    block_count,
    build_H,
    solve_alpha,
    solve_tcstar_incremental,
    solve_tcstar_node_addition,
    solve_tcstar_static,
    verify_H_distances,
)
from .reduction_flow import run_sat
from .reduction_matching import closed_form_insertions, run_oumv

NODE_ADD_ALPHAS = (0.3, None, 0.9)  # None stands for solve_alpha()


def draw_oumv(rng: random.Random, n_lo: int, n_hi: int) -> OuMvInstance:
    n = rng.randint(n_lo, n_hi)
    density = rng.uniform(0.05, 0.6)
    return gen_oumv(n, density, rng.randrange(2**32))


def draw_cnf(rng: random.Random, v_lo: int, v_hi: int, width: int = 3) -> CnfFormula:
    choices = [v for v in range(v_lo, v_hi + 1) if v % 2 == 0 and v >= max(2, width)]
    if not choices:
        raise ValueError(f"no even variable count in {v_lo}..{v_hi}")
    num_vars = rng.choice(choices)
    clauses = rng.randint(2, 4 * num_vars)
    return gen_cnf(num_vars, clauses, width, rng.randrange(2**32))


def draw_tcstar(rng: random.Random, n_lo: int, n_hi: int, dp_hi: int = 3) -> TcStarInstance:
    n = rng.randint(n_lo, n_hi)
    delta, p = rng.randint(1, dp_hi), rng.randint(1, dp_hi)
    seed = rng.randrange(2**32)
    if rng.random() < 0.5:
        target = (rng.randrange(n), rng.randrange(n), rng.randrange(n))
        return plant_tcstar(n, delta, p, seed, target, bc_density=rng.uniform(0.3, 1.0))
    # dense draws so that NO instances (every triple closed) show up too
    return gen_tcstar(n, delta, p, rng.uniform(0.5, 1.0), seed)


def check_matching(inst: OuMvInstance) -> list[str]:
    out = []
    gad, bits = run_oumv(inst)
    want = [int(b) for b in oumv_oracle(inst)]
    n = inst.n
    if bits != want:
        out.append(f"bits {bits} != oracle {want}")
    for i, (size, pre) in enumerate(zip(gad.queried, gad.pre_phase)):
        if size != 4 * n + 2 * i + want[i]:
            out.append(f"phase {i}: size {size}, law wants {4 * n + 2 * i + want[i]}")
        if pre != 4 * n + 2 * i:
            out.append(f"phase {i}: pre-phase size {pre} != {4 * n + 2 * i}")
    ins = gad.graph.op_count().insertions
    if ins != closed_form_insertions(inst):
        out.append(f"insertions {ins} != closed form {closed_form_insertions(inst)}")
    return out


def check_flow(f: CnfFormula) -> list[str]:
    out = []
    gad, answer = run_sat(f)
    want = sat_oracle(f)
    if answer != want:
        out.append(f"flow answer {answer} != sat oracle {want}")
    N = gad.N
    for r in gad.results:
        if r.pre_value != (r.phase - 1) * N:
            out.append(f"phase {r.phase}: pre-phase flow {r.pre_value} != {(r.phase - 1) * N}")
        if not want and r.value != r.phase * N:
            out.append(f"phase {r.phase}: unsat formula but flow {r.value} != {r.phase * N}")
    return out


def check_diameter(inst: TcStarInstance) -> list[str]:
    out = []
    want = tcstar_oracle(inst).answer
    for gamma in (1.0, 0.5):
        for k in range(block_count(inst.n, gamma)):
            h = build_H(inst, gamma, k)
            report = verify_H_distances(h)
            if not report.ok:
                out.append(f"gamma={gamma} k={k}: lemma mismatches {list(report.mismatches)[:5]}")
            d = exact_diameter(h.graph).value
            if d > 4:
                out.append(f"gamma={gamma} k={k}: diameter {d} > 4")
    answers = {
        "static(1)": solve_tcstar_static(inst, 1.0),
        "static(1/2)": solve_tcstar_static(inst, 0.5),
        "incremental": solve_tcstar_incremental(inst)[0],
    }
    for alpha in NODE_ADD_ALPHAS:
        a = solve_alpha() if alpha is None else alpha
        answers[f"node-add({a:.4g})"] = solve_tcstar_node_addition(inst, a)[0]
    for name, got in answers.items():
        if got != want:
            out.append(f"{name} answered {got}, oracle {want}")
    return out
