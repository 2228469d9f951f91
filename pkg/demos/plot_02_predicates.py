"""
Predicates behind the curve decisions
=====================================

The distance decisions are assembled from a handful of yes/no questions
about one edge and one or two vertices. Here each one is asked directly.
"""

from curveballs.geometry import Segment
from curveballs.predicates import (
    Curve,
    DoubleStadium,
    p_double_stadium_line,
    p_endpoints,
    p_monotonicity,
    p_vertex_edge,
)

edge = Segment((0, 0), (1, 1))

# is some point of the edge within r of the vertex?
for r in (0.70, 0.71):
    print(f"vertex (1,0) near diagonal edge at r={r}:", p_vertex_edge(edge, (1, 0), r))

# start and end conditions of a pair of curves
s, q = Curve([[0, 0], [1, 0]]), Curve([[0, 1], [9, 9]])
print("endpoints within 1 (start, end):", p_endpoints(s, q, 1.0))

# does the line through the probe pass through both stadiums at once?
probe = Segment((0, 0), (1, 0))
upper, lower = Segment((-1, 0.5), (1, 0.5)), Segment((-1, -0.5), (1, -0.5))
for r in (0.4, 0.6):
    ds = DoubleStadium(upper, lower, r)
    print(f"x-axis meets both stadiums at r={r}:", p_double_stadium_line(probe, ds))

# can we visit v1 and then v2 while moving forward along the edge?
seg = Segment((0, 0), (1, 0))
print("forward order 0.2 -> 0.8 at r=0.1:", p_monotonicity(seg, (0.2, 0), (0.8, 0), 0.1))
print("backward order 0.8 -> 0.2 at r=0.1:", p_monotonicity(seg, (0.8, 0), (0.2, 0), 0.1))
print("backward order 0.8 -> 0.2 at r=0.4:", p_monotonicity(seg, (0.8, 0), (0.2, 0), 0.4))
