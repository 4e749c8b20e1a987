"""Trade objective against constraint violation in the waste-gas allocation.

The let-down limit is soft: at alpha = 0 it may be exceeded by its full
tolerance, at alpha = 1 it must hold with that much to spare.
"""

import numpy as np

from fuzzyproc import FlpProblem, ParametricConstraint, alpha_sweep, decision_feasibility, objective_bounds

prob = FlpProblem(
    [-0.544, 3.0],
    (
        ParametricConstraint([1, 0], 33.652, enforce=False, name="dead_end"),
        ParametricConstraint([0, 1], 23.050, equality=True, name="treaters"),
        ParametricConstraint([-0.544, 1], 4.743, 0.2, name="let_down"),
    ),
    ("x1", "x2"),
)

b0, b1 = objective_bounds(prob)
print(f"objective range {b1:.3f} .. {b0:.3f}")
# mu_D also scores the dead-end limit, which x1 passes once alpha > 0.5,
# so the best compromise sits where the objective and let-down grades cross.
print("alpha    x1       x2       z       mu_D")
for s in alpha_sweep(prob, np.linspace(0, 1, 6)):
    mu = decision_feasibility(s.x_star, prob, b0, b1)
    print(f"{s.alpha:4.1f}  {s.x_star[0]:8.3f} {s.x_star[1]:8.3f} {s.z_star:8.3f}  {mu:.3f}")
