"""Acceptance gate: fourteen randomized and frozen end-to-end checks.

Each test prints one summary line so a verbose run reads as a checklist.
Random ensembles are drawn through ``trial_rng`` with fixed seeds; weight
conditioning is kept moderate where a flat double-precision tolerance is
asserted, since round-off in weighted solves scales with the condition
number of the weight.
"""

import json
import subprocess
import sys

import numpy as np
import pytest
import scipy.linalg as la

import twonorm as tn
from twonorm import rand
from twonorm.space import _spec_norm

from conftest import modest_space, rotated_normal


def report(name, ok):
    print(f"criterion {name}: {'PASS' if ok else 'FAIL'}")
    assert ok


def test_01_adjoint_calculus_identity_and_involution():
    worst_id = 0.0
    worst_inv = 0.0
    for trial in range(100):
        rng = rand.trial_rng(7, trial)
        ws = modest_space(rng, 12, floor=0.05)
        t = rand.random_operator(rng, ws)
        tp = ws.plus_matrix(t)
        nt = _spec_norm(t)
        na = _spec_norm(np.asarray(ws.weight))
        res_id = np.abs(ws.weight @ t - tp.conj().T @ ws.weight).max()
        res_inv = _spec_norm(ws.plus_matrix(tp) - t)
        worst_id = max(worst_id, res_id / (nt * na))
        worst_inv = max(worst_inv, res_inv / nt)
    report("01 adjoint calculus", worst_id <= 1e-10 and worst_inv <= 1e-10)


def test_02_weighted_norm_bound():
    ok = True
    for trial in range(100):
        rng = rand.trial_rng(11, trial)
        ws = rand.random_space(rng, 12)
        t = rand.random_operator(rng, ws)
        rep = tn.gz_bound_check(ws, t)
        ok = ok and rep.lhs <= rep.rhs + 1e-10
    report("02 weighted norm bound", ok)


def test_03_oblique_projection_identities():
    worst = 0.0
    for trial in range(100):
        rng = rand.trial_rng(13, trial)
        ws = rand.random_space(rng, 12)
        r = int(rng.integers(1, 12))
        s, t = rand.random_companion_pair(rng, ws, r)
        rep = tn.buckholtz_verify(ws, s, t)
        worst = max(worst, max(rep.res_inverse, rep.res_projection) / rep.kappa)
    report("03 projection identities", worst <= 1e-9)


def test_04_compat_projection_unique_and_matches_formula():
    worst_unique = 0.0
    worst_formula = 0.0
    for trial in range(50):
        rng = rand.trial_rng(17, trial)
        ws = rand.random_space(rng, 10)
        r = int(rng.integers(1, 10))
        s, t1 = rand.random_companion_pair(rng, ws, r)
        _, t2 = rand.random_companion_pair(rng, ws, r)
        direct = tn.compat_projection(ws, s).p.matrix
        kappas, qs = [], []
        for t in (t1, t2):
            pair = tn.oblique_projection(ws, s, t)
            c = pair.p.matrix + pair.p_plus.matrix - np.eye(10)
            sv = la.svdvals(c)
            kappa = float(sv[0] / sv[-1])
            kappas.append(kappa)
            q = la.solve(c, pair.p_plus.matrix)
            qs.append(q)
            worst_formula = max(worst_formula, _spec_norm(q - direct) / kappa)
        worst_unique = max(
            worst_unique, _spec_norm(qs[0] - qs[1]) / max(kappas)
        )
    report(
        "04 compat projection unique",
        worst_unique <= 1e-9 and worst_formula <= 1e-9,
    )


def test_05_plus_kernel_matches_range_complement():
    worst = 0.0
    for trial in range(100):
        rng = rand.trial_rng(19, trial)
        ws = rand.random_space(rng, 8)
        r = int(rng.integers(1, 8))
        t = rand._complex_gauss(rng, 8, r) @ rand._complex_gauss(rng, 8, r).conj().T
        rep = tn.nullspace_plus_check(ws, t)
        worst = max(worst, rep.null_angle)
    report("05 plus kernel duality", worst <= 1e-8)


def test_06_companion_transport():
    worst_res = 0.0
    worst_ang = 0.0
    conds_finite = True
    for trial in range(50):
        rng = rand.trial_rng(23, trial)
        ws = modest_space(rng, 10, floor=1e-2)
        r = int(rng.integers(1, 10))
        s, t = rand.random_companion_pair(rng, ws, r, min_gap=0.02, attempts=2000)
        _, t1 = rand.random_companion_pair(rng, ws, r, min_gap=0.02, attempts=2000)
        g = tn.companion_transport(ws, s, t, t1)
        p_st = tn.oblique_projection(ws, s, t)
        p_t1s = tn.oblique_projection(ws, t1, s)
        p_ts = tn.oblique_projection(ws, t, s)
        formula = p_st.p_plus.matrix + p_ts.p_plus.matrix @ p_t1s.p_plus.matrix
        worst_res = max(worst_res, _spec_norm(ws.plus_matrix(g.matrix) - formula))
        gs = tn.span(ws, g.matrix @ s.basis)
        gt = tn.span(ws, g.matrix @ t.basis)
        worst_ang = max(worst_ang, tn.max_principal_angle(gs, s),
                        tn.max_principal_angle(gt, t1))
        conds_finite = conds_finite and np.isfinite(np.linalg.cond(g.matrix)) \
            and np.isfinite(np.linalg.cond(ws.plus_matrix(g.matrix)))
    report(
        "06 companion transport",
        worst_res <= 1e-9 and worst_ang <= 1e-8 and conds_finite,
    )


def test_07_contour_projection_convergence_and_plus():
    ws2 = tn.make_space(2, np.eye(2))
    errs = {}
    for m in (16, 32, 64):
        pair, _ = tn.riesz_projection(ws2, np.diag([1.0, 2.0]), 1.0, 0.4, m)
        errs[m] = _spec_norm(pair.p.matrix - np.diag([1.0, 0.0]))
    quad = (
        errs[32] <= max(50.0 * errs[16] ** 2, 1e-12)
        and errs[64] <= max(50.0 * errs[32] ** 2, 1e-12)
        and errs[64] <= 1e-8
    )
    worst = 0.0
    for trial in range(20):
        rng = rand.trial_rng(101, trial)
        d = 8
        ws = modest_space(rng, d, floor=1e-2)
        lams = 3.0 * np.exp(2j * np.pi * np.arange(d) / d)
        lams = lams * np.exp(1j * rng.uniform(0, 2 * np.pi))
        for _ in range(200):
            v = rand._complex_gauss(rng, d, d)
            if np.linalg.cond(v) < 10:
                break
        t = v @ np.diag(lams) @ la.inv(v)
        pair, diag = tn.riesz_projection(ws, t, lams[0], 0.4, 64)
        worst = max(worst, diag.plus_res, diag.idempotency_res)
    report("07 contour projection", quad and worst <= 1e-8)


def test_08_proper_spectrum_collapses():
    worst = 0.0
    for trial in range(100):
        rng = rand.trial_rng(29, trial)
        ws = rand.random_space(rng, 12)
        t = rand.random_operator(rng, ws)
        ev_e = np.sort_complex(tn.spectrum(ws, t, "E").values)
        ev_p = np.sort_complex(tn.spectrum(ws, t, "P").values)
        worst = max(worst, float(np.abs(ev_e - ev_p).max()))
    report("08 proper spectrum collapse", worst <= 1e-8)


def test_09_coupling_criterion_margins():
    rep = tn.z_criterion_margin(np.diag([1.0, -1.0]))
    special = rep.pair_margin <= 1e-12 and rep.op_margin <= 1e-12
    rep = tn.z_criterion_margin(0.5 * np.eye(2))
    special = special and abs(rep.pair_margin - 1.25) <= 1e-12 \
        and abs(rep.op_margin - 1.25) <= 1e-12
    worst = 0.0
    for trial in range(50):
        rng = rand.trial_rng(31, trial)
        z = rotated_normal(rng, 4)
        rep = tn.z_criterion_margin(z)
        eigs = la.eigvals(z)
        pair_oracle = min(
            abs(1.0 + a * np.conj(b)) for a in eigs for b in eigs
        )
        worst = max(worst, abs(rep.op_margin - pair_oracle))
    report("09 coupling criterion", special and worst <= 1e-8)


def test_10_sylvester_solves_and_margins():
    worst_res = 0.0
    all_solvable = True
    for trial in range(100):
        rng = rand.trial_rng(37, trial)
        k = 4
        for _ in range(200):
            u1 = rand.haar_unitary(rng, k)
            u2 = rand.haar_unitary(rng, k)
            c = (u1 * rand._complex_gauss(rng, k)) @ u1.conj().T
            d = (u2 * rand._complex_gauss(rng, k)) @ u2.conj().T
            sep = min(abs(a - b) for a in la.eigvals(c) for b in la.eigvals(d))
            if sep >= 0.1:
                break
        res = tn.sylvester(c, d, rand._complex_gauss(rng, k, k))
        all_solvable = all_solvable and res.solvable
        worst_res = max(worst_res, res.residual)
    worst_margin = 0.0
    all_unsolvable = True
    for trial in range(20):
        rng = rand.trial_rng(41, trial)
        k = 4
        u1 = rand.haar_unitary(rng, k)
        u2 = rand.haar_unitary(rng, k)
        ev1 = rand._complex_gauss(rng, k)
        ev2 = rand._complex_gauss(rng, k)
        ev2[0] = ev1[0]
        c = (u1 * ev1) @ u1.conj().T
        d = (u2 * ev2) @ u2.conj().T
        res = tn.sylvester(c, d, np.eye(k))
        all_unsolvable = all_unsolvable and not res.solvable
        worst_margin = max(worst_margin, res.margin)
    report(
        "10 sylvester margins",
        worst_res <= 1e-8 and all_solvable and all_unsolvable
        and worst_margin <= 1e-10,
    )


def test_11_two_companions_transport():
    model = tn.matrix_space(4)
    rep = tn.two_companions_demo(model, 0.5 * np.eye(2), np.diag([1.0, -1.0]))
    report(
        "11 two companions",
        rep.fixed_kernel
        and rep.transported_to_block_range
        and abs(rep.transported_pair_margin) <= 1e-12,
    )


def test_12_projection_products_have_positive_spectrum():
    max_imag = 0.0
    min_real = np.inf
    for trial in range(100):
        rng = rand.trial_rng(12, trial)
        ws = modest_space(rng, 10, floor=1e-2)
        r = int(rng.integers(1, 10))
        s, t = rand.random_companion_pair(rng, ws, r, min_gap=0.02, attempts=2000)
        pair = tn.oblique_projection(ws, s, t)
        rep = tn.vvplus_diagnostics(ws, pair.p)
        max_imag = max(max_imag, float(np.abs(rep.spec_vvplus.imag).max()))
        min_real = min(min_real, float(rep.spec_vvplus.real.min()))
    report(
        "12 projection product positivity",
        max_imag <= 1e-9 and min_real > 0.0,
    )


def test_13_diverging_vector_study():
    rows = tn.diverging_vector_study([8, 16, 32, 64], 0.5)
    gs = [row.g_enorm for row in rows]
    growing = all(a < b for a, b in zip(gs, gs[1:])) and gs[-1] / gs[0] >= 1.2
    ctrl = tn.diverging_vector_study([8, 16, 32, 64], 0.5, control=True)
    qs = [row.q_norm for row in ctrl]
    report(
        "13 diverging vector study",
        growing and max(qs) - min(qs) <= 1e-10,
    )


def test_14_cli_determinism():
    invocations = [
        ["check", "adjoint", "--dim", "6", "--trials", "5", "--seed", "3"],
        ["study", "diverge", "--beta", "0.5", "--dims", "8,16", "--format", "csv"],
        ["demo", "cq", "--z", "scalar:0.5", "--k", "2"],
        ["riesz", "--t", "diag:1,2", "--lambda", "1", "--eps", "0.4",
         "--m", "64", "--format", "csv"],
    ]
    ok = True
    for args in invocations:
        cmd = [sys.executable, "-m", "twonorm"] + args
        first = subprocess.run(cmd, capture_output=True, timeout=60)
        second = subprocess.run(cmd, capture_output=True, timeout=60)
        ok = ok and first.returncode == 0 and second.returncode == 0
        ok = ok and first.stdout == second.stdout
    report("14 cli determinism", ok)
