"""Pick a product temperature set point from rule grades.

Each rule contributes the mean of its two grades; a candidate's throttle is
the location-weighted combination of its rules, and the highest wins.
"""

from fuzzyproc import RuleGrades, SetpointCandidate, select_setpoint

quantization = {"P2": 0.5, "Z": 0.5}
candidates = [
    SetpointCandidate(-5.5, (RuleGrades(93, 0.3, 0.4, "P2"), RuleGrades(94, 0.2, 0.6, "Z")), normalize=False),
    SetpointCandidate(-5.0, (RuleGrades(94, 0.6, 0.5, "P2"), RuleGrades(95, 0.35, 0.4, "Z")), {"P2": 1.0}),
    SetpointCandidate(-4.5, (RuleGrades(95, 0.35, 0.4, "P2"), RuleGrades(96, 0.3, 0.25, "Z"))),
    SetpointCandidate(-4.0, (RuleGrades(96, 0.25, 0.3, "P2"), RuleGrades(97, 0.4, 0.4, "Z"))),
]

result = select_setpoint(candidates, quantization)
for sp, t in result.throttles:
    print(f"{sp:+.2f} degC  throttle {t:.3f}")
print("chosen:", result.chosen)
