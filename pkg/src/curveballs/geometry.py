"""Low-level geometry: segments, the four basic shapes, square-root comparisons
and line/shape intersection intervals.

Every intersection boundary is carried as a :class:`SqrtExpr` (``a + sign*sqrt(b)``)
so that interval endpoints can be ordered with :func:`compare_sqrt`, which
squares instead of taking roots wherever the inputs allow it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "ETA",
    "Ordering",
    "Segment",
    "SqrtExpr",
    "SqrtInterval",
    "EMPTY",
    "Ball",
    "Stadium",
    "Cylinder",
    "CappedCylinder",
    "as_point",
    "compare_sqrt",
    "compare_expr",
    "contains",
    "point_segment_distance",
    "line_ball_interval",
    "line_cylinder_interval",
    "line_capped_cylinder_interval",
    "line_stadium_interval",
    "intersect",
    "hull",
    "clip_unit",
]

#: Absolute tolerance for equality decisions and discriminant jitter.
ETA = 1e-9


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def as_point(x) -> np.ndarray:
    """Return ``x`` as a finite 1-D float array."""
    p = np.asarray(x, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError(f"a point must be a non-empty 1-D coordinate vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


def _check_dims(*points: np.ndarray) -> None:
    d = points[0].shape[0]
    for p in points[1:]:
        if p.shape[0] != d:
            raise ValueError(f"dimension mismatch: {d} vs {p.shape[0]}")


@dataclass(frozen=True, eq=False)
class Segment:
    """Directed segment from ``start`` to ``end``; may be degenerate."""

    start: np.ndarray
    end: np.ndarray

    def __init__(self, start, end):
        s, t = as_point(start), as_point(end)
        _check_dims(s, t)
        s.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "start", s)
        object.__setattr__(self, "end", t)

    @property
    def dim(self) -> int:
        return self.start.shape[0]

    @property
    def direction(self) -> np.ndarray:
        return self.end - self.start

    @property
    def is_degenerate(self) -> bool:
        return bool(np.array_equal(self.start, self.end))

    def at(self, x: float) -> np.ndarray:
        """Point ``start + (end - start) * x`` on the supporting line."""
        return self.start + self.direction * x

    def reversed(self) -> Segment:
        return Segment(self.end, self.start)

    def __repr__(self) -> str:
        return f"Segment({self.start.tolist()}, {self.end.tolist()})"


# ---------------------------------------------------------------------------
# square-root expressions


@dataclass(frozen=True)
class SqrtExpr:
    """The number ``a + sign * sqrt(b)`` with ``b >= 0``.

    ``a`` may be infinite; such values act as sentinels for unbounded
    intervals and are ordered by plain float comparison.
    """

    a: float
    b: float = 0.0
    sign: int = 1

    def __post_init__(self):
        b = float(self.b)
        if -ETA <= b < 0.0:
            b = 0.0
        if not b >= 0.0 or math.isinf(b):
            raise ValueError(f"radicand must be finite and non-negative, got {self.b}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", b)
        if b == 0.0:
            object.__setattr__(self, "sign", 1)

    @property
    def value(self) -> float:
        return self.a + self.sign * math.sqrt(self.b)

    def __float__(self) -> float:
        return self.value

    def __neg__(self) -> SqrtExpr:
        return SqrtExpr(-self.a, self.b, -self.sign)


ZERO = SqrtExpr(0.0)
ONE = SqrtExpr(1.0)
NEG_INF = SqrtExpr(-math.inf)
POS_INF = SqrtExpr(math.inf)


def _sqrt_diff(b: float, d: float) -> float:
    # sqrt(b) - sqrt(d) without cancellation
    den = math.sqrt(b) + math.sqrt(d)
    return 0.0 if den == 0.0 else (b - d) / den


def _le_sqrt(a: float, b: float, c: float, d: float) -> bool:
    """Decide ``a + sqrt(b) <= c + sqrt(d)`` by repeated squaring."""
    if a == c:
        return b <= d
    if a < c:
        e = c - a
        # sqrt(b) <= e + sqrt(d)  <=>  b - e^2 - d <= 2 e sqrt(d)
        lhs = b - e * e - d
        return lhs < 0.0 or lhs * lhs <= 4.0 * e * e * d
    e = a - c
    # e + sqrt(b) <= sqrt(d)  <=>  2 e sqrt(b) <= d - b - e^2
    rhs = d - b - e * e
    return rhs >= 0.0 and 4.0 * e * e * b <= rhs * rhs


def compare_sqrt(a: float, b: float, c: float, d: float) -> Ordering:
    """Order ``a + sqrt(b)`` against ``c + sqrt(d)``.

    The sign is decided by the squaring case analysis, so no square root is
    taken on that path. ``EQ`` is reported when the two values agree within
    :data:`ETA`.

    Examples
    --------
    >>> compare_sqrt(0, 4, 0, 9)
    <Ordering.LT: -1>
    >>> compare_sqrt(2, 2, 0, 9)
    <Ordering.GT: 1>
    """
    vals = (a, b, c, d)
    if not all(math.isfinite(v) for v in vals):
        raise ValueError("compare_sqrt requires finite inputs")
    if b < 0 or d < 0:
        raise ValueError("compare_sqrt requires non-negative radicands")
    if abs((a - c) + _sqrt_diff(b, d)) <= ETA:
        return Ordering.EQ
    return Ordering.LT if _le_sqrt(a, b, c, d) else Ordering.GT


def compare_expr(x: SqrtExpr, y: SqrtExpr) -> Ordering:
    """Order two :class:`SqrtExpr` values of arbitrary signs."""
    if not (math.isfinite(x.a) and math.isfinite(y.a)):
        xv, yv = x.value, y.value
        if xv == yv:
            return Ordering.EQ
        return Ordering.LT if xv < yv else Ordering.GT
    if x.sign == 1 and y.sign == 1:
        return compare_sqrt(x.a, x.b, y.a, y.b)
    if x.sign == -1 and y.sign == -1:
        # a - sqrt(b) vs c - sqrt(d)  <=>  a + sqrt(d) vs c + sqrt(b)
        return compare_sqrt(x.a, y.b, y.a, x.b)
    if x.sign == -1:
        return Ordering(-_compare_plus_minus(y, x))
    return _compare_plus_minus(x, y)


def _compare_plus_minus(x: SqrtExpr, y: SqrtExpr) -> Ordering:
    # a + sqrt(b) vs c - sqrt(d)  <=>  sqrt(b) + sqrt(d) vs c - a
    a, b, c, d = x.a, x.b, y.a, y.b
    e = c - a
    if abs((math.sqrt(b) + math.sqrt(d)) - e) <= ETA:
        return Ordering.EQ
    if e < 0.0:
        return Ordering.GT
    # b + d + 2 sqrt(bd) vs e^2  <=>  2 sqrt(bd) vs e^2 - b - d
    rhs = e * e - b - d
    if rhs < 0.0:
        return Ordering.GT
    return Ordering.LT if 4.0 * b * d < rhs * rhs else Ordering.GT


def _max(x: SqrtExpr, y: SqrtExpr) -> SqrtExpr:
    return y if compare_expr(x, y) == Ordering.LT else x


def _min(x: SqrtExpr, y: SqrtExpr) -> SqrtExpr:
    return y if compare_expr(x, y) == Ordering.GT else x


@dataclass(frozen=True)
class SqrtInterval:
    """Closed parameter interval ``[lo, hi]`` with square-root endpoints."""

    lo: SqrtExpr
    hi: SqrtExpr

    @property
    def bounds(self) -> tuple[float, float]:
        return self.lo.value, self.hi.value

    def __contains__(self, x: float) -> bool:
        v = SqrtExpr(x)
        return compare_expr(self.lo, v) != Ordering.GT and compare_expr(v, self.hi) != Ordering.GT

    def __repr__(self) -> str:
        lo, hi = self.bounds
        return f"SqrtInterval[{lo:.12g}, {hi:.12g}]"


class _Empty:
    """Singleton for an empty intersection."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self) -> bool:
        return False

    def __contains__(self, x) -> bool:
        return False

    def __repr__(self) -> str:
        return "EMPTY"


EMPTY = _Empty()
Interval = Union[SqrtInterval, _Empty]


def _make_interval(lo: SqrtExpr, hi: SqrtExpr) -> Interval:
    if compare_expr(lo, hi) == Ordering.GT:
        return EMPTY
    return SqrtInterval(lo, hi)


def intersect(i1: Interval, i2: Interval) -> Interval:
    """Intersection of two intervals (``EMPTY`` if disjoint)."""
    if not i1 or not i2:
        return EMPTY
    return _make_interval(_max(i1.lo, i2.lo), _min(i1.hi, i2.hi))


def hull(*intervals: Interval) -> Interval:
    """Smallest interval containing every non-empty argument."""
    live = [i for i in intervals if i]
    if not live:
        return EMPTY
    lo, hi = live[0].lo, live[0].hi
    for i in live[1:]:
        lo, hi = _min(lo, i.lo), _max(hi, i.hi)
    return SqrtInterval(lo, hi)


UNIT = SqrtInterval(ZERO, ONE)


def clip_unit(i: Interval) -> Interval:
    """Restrict an interval to the segment's own parameter range ``[0, 1]``."""
    return intersect(i, UNIT)


# ---------------------------------------------------------------------------
# shapes


@dataclass(frozen=True, eq=False)
class Ball:
    center: np.ndarray
    r: float

    def __init__(self, center, r: float):
        if not r >= 0:
            raise ValueError("radius must be non-negative")
        object.__setattr__(self, "center", as_point(center))
        object.__setattr__(self, "r", float(r))


@dataclass(frozen=True, eq=False)
class _SegmentShape:
    seg: Segment
    r: float

    def __init__(self, seg, r: float):
        if not isinstance(seg, Segment):
            seg = Segment(*seg)
        if not r >= 0:
            raise ValueError("radius must be non-negative")
        object.__setattr__(self, "seg", seg)
        object.__setattr__(self, "r", float(r))


class Stadium(_SegmentShape):
    """Points within ``r`` of the segment."""


class Cylinder(_SegmentShape):
    """Points within ``r`` of the segment's supporting line."""


class CappedCylinder(_SegmentShape):
    """Cylinder cut by the two hyperplanes orthogonal to the segment at its ends."""


Shape = Union[Ball, Stadium, Cylinder, CappedCylinder]


def _within(d2: float, r: float) -> bool:
    return d2 <= (r + ETA) ** 2


def _projection(seg: Segment, x: np.ndarray) -> tuple[float, float]:
    # (parameter of orthogonal projection onto the line, squared distance to the line)
    w = seg.direction
    z = x - seg.start
    ww = float(w @ w)
    lam = float(w @ z) / ww
    perp = z - lam * w
    return lam, float(perp @ perp)


def point_segment_distance(x, seg: Segment) -> float:
    """Euclidean distance from ``x`` to the closed segment."""
    x = as_point(x)
    _check_dims(x, seg.start)
    if seg.is_degenerate:
        return float(np.linalg.norm(x - seg.start))
    lam, _ = _projection(seg, x)
    lam = min(1.0, max(0.0, lam))
    return float(np.linalg.norm(x - seg.at(lam)))


def contains(shape: Shape, x) -> bool:
    """Closed membership test of point ``x`` in ``shape``.

    Shapes built on a degenerate segment behave as the ball around it.
    """
    x = as_point(x)
    if isinstance(shape, Ball):
        _check_dims(x, shape.center)
        z = x - shape.center
        return _within(float(z @ z), shape.r)
    seg, r = shape.seg, shape.r
    _check_dims(x, seg.start)
    if seg.is_degenerate:
        return contains(Ball(seg.start, r), x)
    if isinstance(shape, Stadium):
        return (
            contains(CappedCylinder(seg, r), x)
            or contains(Ball(seg.start, r), x)
            or contains(Ball(seg.end, r), x)
        )
    lam, d2 = _projection(seg, x)
    if not _within(d2, r):
        return False
    if isinstance(shape, Cylinder):
        return True
    if isinstance(shape, CappedCylinder):
        tol = ETA / math.sqrt(float(seg.direction @ seg.direction))
        return -tol <= lam <= 1.0 + tol
    raise TypeError(f"unknown shape {type(shape).__name__}")


# ---------------------------------------------------------------------------
# line / shape intersection intervals


def _cross2(w: np.ndarray, z: np.ndarray) -> float:
    """Squared norm of the wedge product: ``|w|^2 |z|^2 - (w.z)^2`` computed stably."""
    outer = np.outer(w, z)
    return float(np.sum(np.triu(outer - outer.T, 1) ** 2))


def _quadratic_interval(A: float, B: float, wedge: float, r: float) -> Interval:
    # roots of A x^2 + 2 B x + C with B^2 - A C = A r^2 - wedge
    disc = (A * r * r - wedge) / (A * A)
    if disc < -ETA:
        return EMPTY
    disc = max(disc, 0.0)
    centre = -B / A
    return SqrtInterval(SqrtExpr(centre, disc, -1), SqrtExpr(centre, disc, 1))


def _require_line(seg: Segment) -> None:
    if seg.is_degenerate:
        raise ValueError("a degenerate segment does not define a line")


def line_ball_interval(seg: Segment, center, r: float) -> Interval:
    """Parameters ``x`` with ``seg.at(x)`` in the closed ball ``B_r(center)``.

    Examples
    --------
    >>> line_ball_interval(Segment((0, 0), (1, 0)), (0.5, 0), 0.5).bounds
    (0.0, 1.0)
    """
    _require_line(seg)
    c = as_point(center)
    _check_dims(c, seg.start)
    w = seg.direction
    z = seg.start - c
    A = float(w @ w)
    B = float(w @ z)
    return _quadratic_interval(A, B, _cross2(w, z), r)


def line_cylinder_interval(seg: Segment, axis: Segment, r: float) -> Interval:
    """Parameters along ``seg``'s line inside the infinite cylinder around ``axis``."""
    _require_line(seg)
    _require_line(axis)
    _check_dims(seg.start, axis.start)
    a = axis.direction
    aa = float(a @ a)

    def perp(v):
        return v - (float(v @ a) / aa) * a

    pw = perp(seg.direction)
    pz = perp(seg.start - axis.start)
    A = float(pw @ pw)
    w = seg.direction
    if A <= 1e-24 * float(w @ w) or _cross2(w, a) == 0.0:
        # parallel: either the whole line or nothing
        if _within(float(pz @ pz), r):
            return SqrtInterval(NEG_INF, POS_INF)
        return EMPTY
    B = float(pw @ pz)
    return _quadratic_interval(A, B, _cross2(pw, pz), r)


def _slab_interval(seg: Segment, axis: Segment) -> Interval:
    # parameters with 0 <= (g(y) - u).(v - u) <= |v - u|^2
    a = axis.direction
    aa = float(a @ a)
    base = float((seg.start - axis.start) @ a)
    rate = float(seg.direction @ a)
    if rate == 0.0:
        if 0.0 <= base <= aa:
            return SqrtInterval(NEG_INF, POS_INF)
        return EMPTY
    y0 = -base / rate
    y1 = (aa - base) / rate
    if y0 > y1:
        y0, y1 = y1, y0
    return SqrtInterval(SqrtExpr(y0), SqrtExpr(y1))


def line_capped_cylinder_interval(seg: Segment, axis: Segment, r: float) -> Interval:
    """Parameters along ``seg``'s line inside the capped cylinder around ``axis``.

    Infinite-cylinder interval intersected with the slab between the two cap
    hyperplanes.

    Examples
    --------
    >>> seg = Segment((0.5, -1), (0.5, 1))
    >>> line_capped_cylinder_interval(seg, Segment((0, 0), (1, 0)), 0.5).bounds
    (0.25, 0.75)
    """
    return intersect(line_cylinder_interval(seg, axis, r), _slab_interval(seg, axis))


def line_stadium_interval(seg: Segment, e: Segment, r: float) -> Interval:
    """Parameters along ``seg``'s line inside the stadium around ``e``.

    The stadium is convex, so the union of the capped-cylinder part and the two
    end balls is a single interval.
    """
    _require_line(seg)
    if e.is_degenerate:
        return line_ball_interval(seg, e.start, r)
    return hull(
        line_capped_cylinder_interval(seg, e, r),
        line_ball_interval(seg, e.start, r),
        line_ball_interval(seg, e.end, r),
    )
