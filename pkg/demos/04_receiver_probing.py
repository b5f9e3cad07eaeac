"""
Bracketing and stability of the solar receiver model
====================================================

The receiver balance couples cell temperature, the two TEG plate
temperatures and the two efficiencies. Before solving, we check that a box
brackets a zero componentwise and look at how sensitive the residual is to the
cell efficiency ``v`` (component 4).
"""

# %%
import numpy as np

from fracroot import box_bracket_check, receiver_coefficients, receiver_problem, stability_curve, stability_probe

for i, a in enumerate(receiver_coefficients().as_tuple(), start=1):
    print(f"a{i} = {a:.8g}")

problem = receiver_problem()

# %%
# Each residual component changes sign between the two corners.
box = box_bracket_check(problem, [53, 51, 22, 0, 0], [54, 52, 23, 1, 1])
print("f_k(X_a) * f_k(X_b):", np.round(box.component_products, 4), "holds:", box.holds)

# %%
# A step of 0.1 in ``v`` moves the residual norm by several units.
base = np.array(problem.reference_x0)
report = stability_probe(problem, base, component=4, offsets=[-0.1, 0.0, 0.1])
for d, n in zip(report.offsets, report.residual_norms):
    print(f"v = {base[3] + d:.1f}: |f| = {n:.3f}")
print("classification:", report.classification)

# %%
# The residual is affine in ``v``, so the norm along this line is the square
# root of a quadratic. Its minimum is where a solver has to aim.
curve = stability_curve(problem, base, 4, (0.3, 0.5), 201)
i = int(np.argmin(curve.norms))
print(f"smallest |f| on the line: {curve.norms[i]:.4f} at v = {curve.v[i]:.3f}")
