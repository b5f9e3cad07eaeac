"""
Solving a linear system without inverting a matrix
==================================================

The fractional pseudo-Newton step only needs residual evaluations, so it
applies to ``A x = b`` as readily as to nonlinear systems. Here it is compared
with the parallel chord method on a 3x3 system whose exact solution we know.
"""

# %%
import numpy as np

from fracroot import SolverConfig, estimate_convergence_order, get_problem, solve, solve_parallel_chord
from fracroot.problems import EXAMPLE3_MATRIX, EXAMPLE3_RHS

problem = get_problem("example3")
exact = np.linalg.solve(EXAMPLE3_MATRIX, EXAMPLE3_RHS)
print("exact solution:", exact)

# %%
# One run of order 0.90162 from a constant start vector. The default
# tolerance stops the iteration once ``|f(x)| <= 1e-4``.
config = SolverConfig(alpha=0.90162, epsilon=1e-3)
out = solve(problem, [0.64, 0.64, 0.64], config, keep_trace=True)
print(f"{out.status}: {out.iterations} iterations, |f| = {out.residual_norm:.3e}")
print("root:", out.root.real, " error:", np.max(np.abs(out.root - exact)))

# %%
# Both methods converge linearly. The estimate fits
# ``log e_{k+1} = log C + p log e_k`` over the tail of a long trace.
tight = SolverConfig(alpha=0.90162, epsilon=1e-3, tol_residual=1e-10)
pn = solve(problem, [0.64] * 3, tight, keep_trace=True)
chord = solve_parallel_chord(problem, [0.64] * 3, slope=20.0, tol_residual=1e-10,
                             max_iter=5000, keep_trace=True)
for name, run in (("pseudo-Newton", pn), ("parallel chord", chord)):
    est = estimate_convergence_order(run.trace)
    print(f"{name:15s} order {est.order:.3f}, factor {est.factor:.3f}, {run.iterations} steps")
