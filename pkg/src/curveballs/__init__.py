"""Fréchet and Hausdorff ball membership for polygonal curves, sampling-based
range counting over curve datasets, and shattering experiments."""

__version__ = "0.1.0"

from .geometry import (
    EMPTY,
    ETA,
    Ball,
    CappedCylinder,
    Cylinder,
    Ordering,
    Segment,
    SqrtExpr,
    SqrtInterval,
    Stadium,
    compare_sqrt,
    contains,
    line_ball_interval,
    line_capped_cylinder_interval,
    line_stadium_interval,
)
from .predicates import (
    Curve,
    DoubleStadium,
    MonotoneRange,
    p_double_stadium_line,
    p_endpoints,
    p_monotonicity,
    p_vertex_edge,
)
from .distances import (
    ALL_EQUAL_MEASURES,
    FreeSpaceDiagram,
    Measure,
    Traversal,
    decide,
    decide_directed_hausdorff,
    decide_frechet,
    decide_hausdorff,
    decide_weak_frechet,
    discrete_frechet,
    discrete_hausdorff,
    distance,
    value_by_bisection,
)
from .ranges import (
    Dataset,
    RangeQuery,
    SampleSpec,
    approx_count,
    draw_sample,
    exact_count,
    kde,
    kde_sample_bound,
    sample_size,
    separator_sample_size,
)
from .vclab import (
    ShatterReport,
    bound_formulas,
    circle_construction,
    induced_subsets,
    shattered_subset_search,
)
from .io import DataError, generate_synthetic, load_dataset, save_dataset
