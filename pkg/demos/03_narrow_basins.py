"""
Narrow basins need a fine order grid
====================================

Some zeros are reached only from a sliver of orders about 1e-4 wide. Random
sampling over the whole of (0, 2) rarely lands there; a uniform grid over a
short interval does.
"""

# %%
from fracroot import SolverConfig, SweepPlan, alpha_sweep, get_problem

problem = get_problem("example2")
config = SolverConfig.for_problem(problem, 0.5)
target = (1.34508926, -1.29220278, -1.44485467)

coarse = alpha_sweep(problem, SweepPlan(x0=problem.reference_x0, base_config=config,
                                        samples=2000, seed=7))
print(f"random sweep: {len(coarse)} roots, nearest to target at {coarse.nearest(target)[1]:.2e}")

# %%
fine = alpha_sweep(problem, SweepPlan(x0=problem.reference_x0, base_config=config,
                                      grid_step=1e-5, domain=((1.03, 1.05),), margin=0.0))
rec, dist = fine.nearest(target)
print(f"grid sweep:   {len(fine)} roots, nearest to target at {dist:.2e} (alpha={rec.alpha_used:.5f})")
