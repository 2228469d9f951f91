"""Distance predicates on polygonal curves.

Each predicate is a boolean function of a few curve features (vertices,
edges) and a radius ``r``. Together they determine membership of a curve in a
metric ball under the Hausdorff and Fréchet distances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .geometry import (
    Ball,
    Ordering,
    Segment,
    Stadium,
    as_point,
    compare_expr,
    contains,
    intersect,
    line_ball_interval,
    line_stadium_interval,
)

__all__ = [
    "Curve",
    "DoubleStadium",
    "MonotoneRange",
    "p_vertex_edge",
    "p_endpoints",
    "p_double_stadium_line",
    "p_monotonicity",
]


@dataclass(frozen=True, eq=False)
class Curve:
    """Polygonal curve given by an ordered ``(m, d)`` vertex array."""

    vertices: np.ndarray
    id: str = ""

    def __init__(self, vertices: Sequence | np.ndarray, id: str = ""):
        v = np.array(vertices, dtype=float)
        if v.ndim == 1:
            v = v[None, :]
        if v.ndim != 2 or v.shape[0] == 0 or v.shape[1] == 0:
            raise ValueError(f"curve {id!r}: expected a non-empty (m, d) vertex array, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError(f"curve {id!r}: coordinates must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "id", str(id))

    @property
    def m(self) -> int:
        return self.vertices.shape[0]

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def first(self) -> np.ndarray:
        return self.vertices[0]

    @property
    def last(self) -> np.ndarray:
        return self.vertices[-1]

    def edges(self) -> Iterator[Segment]:
        for i in range(self.m - 1):
            yield Segment(self.vertices[i], self.vertices[i + 1])

    def edge(self, i: int) -> Segment:
        return Segment(self.vertices[i], self.vertices[i + 1])

    def reversed(self) -> Curve:
        return Curve(self.vertices[::-1], self.id)

    def transformed(self, rotation: np.ndarray | None = None, shift=0.0, scale: float = 1.0) -> Curve:
        v = self.vertices if rotation is None else self.vertices @ np.asarray(rotation).T
        return Curve(scale * v + shift, self.id)

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"Curve(id={self.id!r}, m={self.m}, d={self.dim})"


@dataclass(frozen=True)
class DoubleStadium:
    """Intersection of the stadiums of radius ``r`` around ``e1`` and ``e2``."""

    e1: Segment
    e2: Segment
    r: float

    def contains(self, x) -> bool:
        return contains(Stadium(self.e1, self.r), x) and contains(Stadium(self.e2, self.r), x)


@dataclass(frozen=True)
class MonotoneRange:
    """Pairs ``(v1, v2)`` with points ``p1`` before ``p2`` on the directed line of ``seg``
    such that ``|p1 - v1| <= r`` and ``|p2 - v2| <= r``."""

    seg: Segment
    r: float

    def __contains__(self, pair) -> bool:
        v1, v2 = pair
        return p_monotonicity(self.seg, v1, v2, self.r)


def p_vertex_edge(edge: Segment, vertex, r: float) -> bool:
    """True iff some point of ``edge`` lies within ``r`` of ``vertex``.

    Covers both the horizontal and the vertical vertex-edge predicate; the
    caller decides which curve contributes the edge.
    """
    return contains(Stadium(edge, r), vertex)


def p_endpoints(s: Curve, q: Curve, r: float) -> tuple[bool, bool]:
    """Start and end conditions ``|s_1 - q_1| <= r`` and ``|s_m - q_k| <= r``."""
    return contains(Ball(q.first, r), s.first), contains(Ball(q.last, r), s.last)


def p_double_stadium_line(probe: Segment, ds: DoubleStadium) -> bool:
    """True iff the line through ``probe`` meets both stadiums in a common point.

    Computed as the intersection of the two line/stadium parameter intervals.
    A degenerate probe is treated as a point.
    """
    if probe.is_degenerate:
        return ds.contains(probe.start)
    i1 = line_stadium_interval(probe, ds.e1, ds.r)
    if not i1:
        return False
    return bool(intersect(i1, line_stadium_interval(probe, ds.e2, ds.r)))


def p_monotonicity(seg: Segment, v1, v2, r: float) -> bool:
    """True iff there are ``p1`` before-or-equal ``p2`` on the directed line of
    ``seg`` with ``|p1 - v1| <= r`` and ``|p2 - v2| <= r``.

    Examples
    --------
    >>> seg = Segment((0, 0), (1, 0))
    >>> p_monotonicity(seg, (0.8, 0), (0.2, 0), 0.1)
    False
    >>> p_monotonicity(seg, (0.8, 0), (0.2, 0), 0.4)
    True
    """
    if seg.is_degenerate:
        raise ValueError("monotonicity needs a non-degenerate direction")
    i1 = line_ball_interval(seg, as_point(v1), r)
    if not i1:
        return False
    i2 = line_ball_interval(seg, as_point(v2), r)
    if not i2:
        return False
    return compare_expr(i1.lo, i2.hi) != Ordering.GT
