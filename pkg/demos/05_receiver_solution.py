"""
Solving the receiver model
==========================

The receiver system is badly conditioned: the fixed-point map contracts by
roughly 0.9997 per step for orders just above 1, so runs take hundreds to
thousands of iterations and only a few orders converge within 2000 steps.
"""

# %%
import numpy as np

from fracroot import SolverConfig, SweepPlan, alpha_sweep, receiver_problem, solve

np.set_printoptions(suppress=True, precision=6)
problem = receiver_problem()
x0 = problem.reference_x0

config = SolverConfig.for_problem(problem, 1.02934)
out = solve(problem, x0, config)
print(f"alpha=1.02934: {out.status} after {out.iterations} iterations")
print("X_N =", np.round(out.root.real, 8))
print(f"|f(X_N)| = {out.residual_norm:.6f}, f(X_N) =", np.round(problem(out.root).real, 4))

# %%
# A seeded sweep over (1.0, 1.1). The problem's own defaults (epsilon 1e-4,
# tolerance 5e-3, max_iter 20000) apply unless overridden.
plan = SweepPlan(x0=x0, base_config=config, samples=200, seed=0, domain=((1.0, 1.1),))
registry = alpha_sweep(problem, plan)
print(dict(registry.tally))
for rec in registry:
    print(f"alpha={rec.alpha_used:.5f}  X={np.round(rec.root.real, 4)}  |f|={rec.residual_norm:.2e}")
