"""Linear balances: a five-unit flowsheet, a branched pipe and an extraction train."""

from fuzzyproc import FlowScenario, build_extraction, build_flowsheet, build_pipe_network

flows = build_flowsheet(FlowScenario(F1=1, F5=3, F6=1, F9=2))
sol = flows.solve()
print("flowsheet:", {k: round(v, 6) for k, v in sol.items()}, "residual", flows.residual(sol))

pipe = build_pipe_network(T=12, T1=5, T2=9, D=0.1, D1=0.08, D2=0.05, mu=1e-3, deltaP=800)
print("pipe velocities (m/s):", {k: round(v, 4) for k, v in pipe.solve().items()})

ext = build_extraction(Es=2.0, Rs=1.0, K=0.8, X0=0.3, Y4=0.0)
print("extraction stages:", {k: round(v, 5) for k, v in ext.solve().items()})
