"""Relations whose links may be indeterminate.

``I`` absorbs under every union and intersection, so any max over a row that
meets an ``I`` is itself ``I``; transitivity becomes a three-valued question.
"""

from fuzzyproc import (
    SAMPLE_RELATION as R,
    dom,
    height,
    is_reflexive,
    is_transitive,
    n_compose,
    sagittal_edges,
    tnorm,
    transitive_closure,
)
from fuzzyproc.neutro import I, NeutroValue

print("min(0.7, I) =", tnorm("standard", 0.7, I))
print("min(0.4I, 0.6I) =", tnorm("standard", NeutroValue.ind(0.4), NeutroValue.ind(0.6)))

print("\nedges:")
for e in sagittal_edges(R):
    print(" ", e)
print("height:", height(R), " dom:", [str(v) for v in dom(R)])
print("reflexive:", is_reflexive(R).status, " transitive:", is_transitive(R).status)

RR = n_compose(R, R)
print("R o R row a:", [str(v) for v in RR.rows()[0]])
print("closure row a:", [str(v) for v in transitive_closure(R).rows()[0]])
