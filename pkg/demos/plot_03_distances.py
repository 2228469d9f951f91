"""
Five ways to compare two curves
===============================

A curve that doubles back separates the measures: Hausdorff and weak
Fréchet ignore the order of travel, Fréchet does not, and the discrete
version only looks at vertices.
"""

from curveballs.distances import Measure, decide, distance
from curveballs.predicates import Curve

s = Curve([[0, 0], [4, 0]], "straight")
q = Curve([[0, 1], [2, 1], [0.5, 1], [4, 1]], "backtrack")

for m in (Measure.HAUSDORFF, Measure.WEAK_FRECHET, Measure.FRECHET, Measure.DISCRETE_FRECHET):
    print(f"{m.value:18s} {distance(m, s, q, tol=1e-9):.6f}")

# the order d_H <= d_wF <= d_F <= d_dF shows up in the decisions too
r = 1.1
print(f"\nat r = {r}:")
for m in (Measure.HAUSDORFF, Measure.WEAK_FRECHET, Measure.FRECHET, Measure.DISCRETE_FRECHET):
    print(f"  {m.value:18s} {decide(m, s, q, r)}")

# with a single point as one curve, every measure asks the same question:
# is the whole other curve within r of the point?
p = Curve([[1, 0.5]], "point")
far = distance(Measure.DISCRETE_FRECHET, p, q)
for r in (far - 1e-3, far):
    votes = {m.value: decide(m, p, q, r) for m in Measure if m is not Measure.HAUSDORFF_DIRECTED_TO}
    print(f"\npoint vs curve at r = {r:.4f}:", set(votes.values()))
