"""Solve a max-min relational equation, falling back to a network fit.

When ``P o Q = R`` has a solution the greatest one is returned directly;
otherwise a one-layer network with clamp activation, started from P, has
its weights adjusted until its outputs match R.
"""

import numpy as np

from fuzzyproc import FnnConfig, FreSystem, compose, greatest_solution, two_stage_solve

rng = np.random.default_rng(1)
P = np.round(rng.uniform(0, 1, (4, 4)), 2)
Q = np.round(rng.uniform(0, 1, (4, 1)), 2)
R = compose(P, Q)

Q_hat, ok = greatest_solution(FreSystem(P, R))
print("solvable:", ok)
print("generating Q :", Q.ravel())
print("greatest Q   :", Q_hat.ravel())

# Raise one target above what its row can reach: no exact solution remains.
R_bad = R.copy()
R_bad[0] = min(1.0, P[0].max() + 0.1)
res = two_stage_solve(FreSystem(P, R_bad), x=np.ones(4), config=FnnConfig(seed=0))
print("\nunsatisfiable rows:", [d.row for d in res.diagnosis if not d.satisfiable])
print(f"network residual {res.network.residual:.4g} after {res.network.iterations} sweeps")
