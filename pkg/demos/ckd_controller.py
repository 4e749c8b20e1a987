"""Estimate cement kiln dust from the alkali ratio and the kiln load.

Walks through one evaluation: fuzzify both inputs, fire the rule table,
clip and aggregate the output terms, then take the mean of maximum.
"""

from fuzzyproc import ckd_controller, infer, reprocessing_controller

ctrl = ckd_controller()
ev = infer(ctrl, 1.2, 17)

print("alkali ratio grades:", ev.grades_x)
print("kiln load grades:   ", ev.grades_y)
for r in ev.fired:
    print(f"  {r.x_label} and {r.y_label} -> {r.out_label}  strength {r.strength:.2f}")
print(f"maximal plateau {ev.result.interval}, CKD estimate {ev.result.midpoint:.1f} %")

# The dust-reprocessing controller works the same way on temperature and gas volume.
net = infer(reprocessing_controller(), 430, 13080)
print(f"\nreprocessing at 430 degC, 13080 m3/min: {net.result.midpoint:.1f} % over {net.result.interval}")
