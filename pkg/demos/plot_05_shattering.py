"""
Shattering points on a circle
=============================

Balls around curves with k vertices can carve out every subset of k
points on a unit circle: one far vertex opposite each point to be
dropped, the rest at the origin. Planar disks around single points, by
contrast, never shatter more than three points.
"""

import numpy as np

from curveballs.distances import Measure, discrete_hausdorff
from curveballs.predicates import Curve
from curveballs.vclab import (
    bound_formulas,
    circle_construction,
    circle_report,
    critical_radius_queries,
    induced_subsets,
    shattered_subset_search,
)

cc = circle_construction(5)
q = cc.make_query([0, 2])
print("query for subset {0, 2}:\n", np.round(q.center.vertices, 3), "\nradius", round(q.radius, 4))

for k in (3, 6, 8):
    rep = circle_report(k, measure=Measure.FRECHET)
    print(f"k={k}: {rep.distinct_subsets} subsets realized, largest shattered {rep.largest_shattered}")

rng = np.random.default_rng(0)
ground = [Curve(p[None], f"g{i}") for i, p in enumerate(rng.uniform(-1, 1, size=(10, 2)))]
centers = ground + [Curve(p[None], f"c{i}") for i, p in enumerate(rng.uniform(-1.5, 1.5, size=(30, 2)))]
queries = critical_radius_queries(ground, centers, Measure.DISCRETE_HAUSDORFF, discrete_hausdorff)
print("\n10 random points, disks at all critical radii:")
print("  distinct traces:", len(induced_subsets(ground, queries)))
print("  largest shattered:", shattered_subset_search(ground, queries))

print("\nreference formulas (constants 1, log base 2) for d=2, k=4, m=16:")
for m in (Measure.DISCRETE_FRECHET, Measure.WEAK_FRECHET, Measure.FRECHET):
    print(f"  {m.value:18s} {bound_formulas(2, 4, 16, m):.0f}")
