"""
Complex zeros from a real starting point
========================================

For a real start and a non-integer order, the pseudo-Jacobian entry
``x**(-alpha) / Gamma(1 - alpha)`` becomes complex as soon as a component goes
negative. Different orders therefore steer the same start towards different
zeros, including complex ones. A sweep over many orders collects them.
"""

# %%
from fracroot import SolverConfig, SweepPlan, alpha_sweep, get_problem
from fracroot.serialize import format_complex

problem = get_problem("example1")
plan = SweepPlan(
    x0=problem.reference_x0,
    base_config=SolverConfig.for_problem(problem, 0.5),
    samples=2000,
    seed=7,
)
registry = alpha_sweep(problem, plan)
print(dict(registry.tally))

# %%
# Distinct zeros, ordered by the first order that reached them.
for i, rec in enumerate(registry, start=1):
    kind = "real" if rec.is_real else "complex"
    comps = ", ".join(format_complex(complex(z), 6) for z in rec.root)
    print(f"{i:2d}  alpha={rec.alpha_used:.5f}  ({comps})  |f|={rec.residual_norm:.1e}  {kind}")

# %%
# The system has real coefficients, so complex zeros come in conjugate pairs.
for rec in registry:
    if not rec.is_real and rec.root[0].imag > 0:
        twin, dist = registry.nearest(rec.root.conj())
        if dist < 1e-3:
            print("conjugate pair:", format_complex(complex(rec.root[0]), 4),
                  "<->", format_complex(complex(twin.root[0]), 4))
