"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary under "acceptance criteria".
"""

import math
import time

import numpy as np

from fracroot.fracderiv import pseudo_jacobian_diag, rl_deriv_const
from fracroot.mathcore import gamma_real, norm2
from fracroot.problems import ProblemDef
from fracroot.solvers import (
    SolverConfig,
    Status,
    estimate_convergence_order,
    pseudo_newton_step,
    solve,
    solve_batch,
    solve_parallel_chord,
)
from fracroot.sweep import SweepPlan, alpha_sweep

import reference as ref


def test_criterion_1_receiver_coefficients(receiver, acceptance_report):
    fa = receiver(ref.RECEIVER_XA).real
    fb = receiver(ref.RECEIVER_XB).real
    err = max(np.max(np.abs(fa - ref.RECEIVER_F_XA)), np.max(np.abs(fb - ref.RECEIVER_F_XB)))
    ok = err <= 1e-3
    acceptance_report(1, ok, f"bracket corner residuals, max componentwise error {err:.2e} (tol 1e-3)")
    assert ok


def test_criterion_2_receiver_solution(receiver, acceptance_report):
    t0 = time.perf_counter()
    plan = SweepPlan(
        x0=ref.RECEIVER_START,
        base_config=SolverConfig.for_problem(receiver, 1.05),
        samples=200,
        seed=0,
        domain=((1.0, 1.1),),
    )
    assert plan.base_config.epsilon == 1e-4
    batch = solve_batch(receiver, plan.x0, plan.alphas(), plan.base_config)
    target = np.array(ref.RECEIVER_ROOT)
    dist = np.max(np.abs(batch.final_iterates - target), axis=1)
    conv = np.array([s is Status.CONVERGED for s in batch.status])
    hits = dist[conv & (batch.residual_norms <= 5e-3) & (dist <= 5e-2)]
    direct = norm2(receiver(ref.RECEIVER_ROOT))
    elapsed = time.perf_counter() - t0
    ok = hits.size > 0 and 4.5e-3 <= direct <= 5.5e-3 and elapsed < 60
    best = hits.min(initial=math.inf)
    acceptance_report(
        2, ok,
        f"{hits.size} of {len(batch)} runs converged within 5e-2 of the reference root "
        f"(closest {best:.2e}), residual at reference root {direct:.4e}, {elapsed:.1f}s",
    )
    assert ok


def test_criterion_3_linear_system(ex3, acceptance_report):
    t0 = time.perf_counter()
    out = solve(ex3, ref.EXAMPLE3_START, SolverConfig(alpha=ref.EXAMPLE3_ALPHA, epsilon=1e-3))
    elapsed = time.perf_counter() - t0
    err = np.max(np.abs(out.root - np.array(ref.EXAMPLE3_EXACT))) if out.converged else math.inf
    ok = out.converged and err <= 1e-3 and elapsed < 1
    acceptance_report(3, ok, f"{out.status.value} in {out.iterations} iterations, "
                             f"max error vs exact solution {err:.2e}, {elapsed * 1e3:.0f}ms")
    assert ok


def test_criterion_4_reference_roots(ex1, ex2, acceptance_report):
    norms = [norm2(ex1(r)) for _, r in ref.EXAMPLE1_ROOTS] + [norm2(ex2(r)) for _, r in ref.EXAMPLE2_ROOTS]
    worst = max(norms)
    ok = len(norms) == 20 and worst <= 2e-4
    acceptance_report(4, ok, f"20 printed roots, largest residual norm {worst:.3e} (tol 2e-4)")
    assert ok


def test_criterion_5_complex_root_discovery(ex1, acceptance_report):
    t0 = time.perf_counter()
    plan = SweepPlan(x0=ref.EXAMPLE1_START, base_config=SolverConfig.for_problem(ex1, 0.5),
                     samples=2000, seed=7)
    reg = alpha_sweep(ex1, plan)
    elapsed = time.perf_counter() - t0
    row1, row5 = ref.EXAMPLE1_ROOTS[0][1], ref.EXAMPLE1_ROOTS[4][1]
    rec1, d1 = reg.nearest(row1)
    rec5, d5 = reg.nearest(row5)
    pair = d1 <= 1e-3 and d5 <= 1e-3 and rec1 is not rec5 and not rec1.is_real
    ok = len(reg) >= 3 and pair and elapsed < 120
    acceptance_report(5, ok, f"{len(reg)} distinct roots; conjugate pair at distances "
                             f"{d1:.1e} / {d5:.1e} (tol 1e-3), {elapsed:.1f}s")
    assert ok


def test_criterion_6_stability_probe(receiver, acceptance_report):
    from fracroot.probing import stability_probe

    rep = stability_probe(receiver, ref.RECEIVER_START, 4, ref.STABILITY_OFFSETS)
    err = np.max(np.abs(np.array(rep.residual_norms) - ref.STABILITY_NORMS))
    ok = err <= 0.05 and rep.classification == "unstable"
    norms = ", ".join(f"{n:.3f}" for n in rep.residual_norms)
    acceptance_report(6, ok, f"norms ({norms}), max error {err:.1e} (tol 0.05), {rep.classification}")
    assert ok


def _property_checks(ex1, ex3):
    rng = np.random.default_rng(2024)
    checks = {}

    x = rng.uniform(0.1, 20, 1000)
    checks["gamma recurrence"] = np.max(np.abs(gamma_real(x + 1) / (x * gamma_real(x)) - 1)) <= 1e-9
    x = rng.uniform(-5, 5, 1000)
    x = x[np.abs(x - np.round(x)) > 1e-6]
    refl = gamma_real(x) * gamma_real(1 - x) * np.sin(math.pi * x) / math.pi
    checks["gamma reflection"] = np.max(np.abs(refl - 1)) <= 1e-9
    checks["gamma(1/2)"] = abs(gamma_real(0.5) - math.sqrt(math.pi)) <= 1e-9

    checks["continuity at alpha=1"] = all(
        abs(rl_deriv_const(1.0, a, 1.0)) < 1e-5 for a in (1 - 1e-6, 1 + 1e-6))

    P = pseudo_jacobian_diag([0.0, 2.0, 0.0], 0.7, 1e-3).entries
    checks["beta switch"] = P[0] == 1e-3 and P[2] == 1e-3

    sq = ProblemDef("square", 2, lambda v: v**2 - 4.0, ((-3.0, 3.0),) * 2)
    root = np.array([2.0, -2.0])
    checks["fixed point"] = np.array_equal(pseudo_newton_step(sq, root, 0.6, 1e-3), root)

    plan = SweepPlan(x0=ref.EXAMPLE1_START, base_config=SolverConfig(alpha=0.5, epsilon=1e-3),
                     samples=300, seed=99)
    a, b = alpha_sweep(ex1, plan), alpha_sweep(ex1, plan)
    checks["sweep determinism"] = a.tally == b.tally and len(a) == len(b) and all(
        r.alpha_used == s.alpha_used and np.array_equal(r.root, s.root) for r, s in zip(a, b))

    pn = solve(ex3, ref.EXAMPLE3_START,
               SolverConfig(alpha=ref.EXAMPLE3_ALPHA, epsilon=1e-3, tol_residual=1e-10),
               keep_trace=True)
    ch = solve_parallel_chord(ex3, ref.EXAMPLE3_START, 20.0, tol_residual=1e-10, max_iter=5000,
                              keep_trace=True)
    p_pn = estimate_convergence_order(pn.trace).order
    p_ch = estimate_convergence_order(ch.trace).order
    checks[f"order pseudo-Newton {p_pn:.3f}"] = 0.8 <= p_pn <= 1.2
    checks[f"order chord {p_ch:.3f}"] = 0.8 <= p_ch <= 1.2
    return checks


def test_criterion_7_property_suites(ex1, ex3, acceptance_report):
    checks = _property_checks(ex1, ex3)
    failed = [k for k, v in checks.items() if not v]
    ok = not failed
    detail = f"{len(checks) - len(failed)}/{len(checks)} property checks pass ({'; '.join(checks)})"
    if failed:
        detail += f"; failing: {', '.join(failed)}"
    acceptance_report(7, ok, detail)
    assert ok
