"""
Exact comparisons and line/shape intersections
==============================================

Every decision in the library reduces to comparing numbers of the form
``a + sqrt(b)`` and to intersecting a line with balls, cylinders and
stadiums. This script walks through those building blocks.
"""

import math

from curveballs.geometry import (
    Ball,
    CappedCylinder,
    Segment,
    Stadium,
    compare_sqrt,
    contains,
    line_ball_interval,
    line_capped_cylinder_interval,
    line_stadium_interval,
)

# sqrt(1e12 + 1) and 1e6 differ by about 5e-7; naive floats barely see it,
# the comparison works on the squared form and does not cancel
print("compare 0+sqrt(1e12+1) vs 1e6+sqrt(0):", compare_sqrt(0, 1e12 + 1, 1e6, 0).name)
print("compare 2+sqrt(2) vs 0+sqrt(9):", compare_sqrt(2, 2, 0, 9).name)

# membership in the four basic shapes around a unit segment, radius 1
edge = ((0, 0), (1, 0))
for shape in (Ball((0, 0), 1), Stadium(edge, 1), CappedCylinder(edge, 1)):
    print(f"{type(shape).__name__:15s} contains (1.5, 0.5):", contains(shape, (1.5, 0.5)))

# parameter interval where the line through a probe segment enters a ball;
# parameter 0 is the probe start, 1 its end
probe = Segment((0, 0), (1, 1))
iv = line_ball_interval(probe, (2, 0), 1.5)
print("line y=x meets ball((2,0), 1.5) for t in", [round(x, 6) for x in iv.bounds])
print("closed form:", [round(1 - math.sqrt(2) / 4, 6), round(1 + math.sqrt(2) / 4, 6)])

# capped cylinder: a vertical probe crossing the horizontal unit segment
iv = line_capped_cylinder_interval(Segment((0.5, -1), (0.5, 1)), Segment(*edge), 0.5)
print("vertical probe inside the capped cylinder for t in", iv.bounds)

# stadium: the union of the capped cylinder and the two end balls
iv = line_stadium_interval(Segment((-2, 0.5), (3, 0.5)), Segment(*edge), 1.0)
print("horizontal probe inside the stadium for t in", [round(x, 4) for x in iv.bounds])
