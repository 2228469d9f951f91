"""Decision procedures and values for curve distances.

Discrete measures are computed exactly from vertex distances. Continuous
measures are decided for a given radius ``r`` (Hausdorff via coverage of each
edge by stadium intervals, weak Fréchet via cell-graph connectivity, Fréchet
via monotone free-space reachability) and approximated by bisection.

Ball membership convention: ``decide(measure, s, q, r)`` answers whether
``s`` lies in the ball of radius ``r`` around the center curve ``q``.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cmp_to_key

import numpy as np

from .geometry import (
    EMPTY,
    ETA,
    Interval,
    Ordering,
    Segment,
    SqrtExpr,
    SqrtInterval,
    clip_unit,
    compare_expr,
    intersect,
    line_ball_interval,
    line_stadium_interval,
)
from .predicates import Curve, p_endpoints, p_vertex_edge

__all__ = [
    "Measure",
    "Traversal",
    "FreeSpaceDiagram",
    "discrete_frechet",
    "discrete_hausdorff",
    "directed_discrete_hausdorff",
    "decide_discrete_frechet",
    "decide_discrete_hausdorff",
    "decide_directed_hausdorff",
    "decide_hausdorff",
    "decide_weak_frechet",
    "decide_frechet",
    "decide",
    "distance",
    "value_by_bisection",
    "ALL_EQUAL_MEASURES",
]


class Measure(str, enum.Enum):
    DISCRETE_HAUSDORFF = "discrete-hausdorff"
    DISCRETE_FRECHET = "discrete-frechet"
    #: directed Hausdorff from the center curve to the ground curve
    HAUSDORFF_DIRECTED_FROM = "hausdorff-from"
    #: directed Hausdorff from the ground curve to the center curve
    HAUSDORFF_DIRECTED_TO = "hausdorff-to"
    HAUSDORFF = "hausdorff"
    WEAK_FRECHET = "weak-frechet"
    FRECHET = "frechet"

    @classmethod
    def parse(cls, name: str | Measure) -> Measure:
        if isinstance(name, Measure):
            return name
        key = str(name).strip().lower().replace("_", "-")
        for m in cls:
            if key in (m.value, m.name.lower().replace("_", "-")):
                return m
        raise ValueError(f"unknown measure {name!r}; choose from {[m.value for m in cls]}")

    @property
    def is_discrete(self) -> bool:
        return self in (Measure.DISCRETE_HAUSDORFF, Measure.DISCRETE_FRECHET)


#: Measures that coincide when one of the two curves is a single point.
ALL_EQUAL_MEASURES = (
    Measure.DISCRETE_HAUSDORFF,
    Measure.HAUSDORFF_DIRECTED_FROM,
    Measure.DISCRETE_FRECHET,
    Measure.FRECHET,
    Measure.WEAK_FRECHET,
    Measure.HAUSDORFF,
)


def _pairwise(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def _check_same_dim(s: Curve, q: Curve) -> None:
    if s.dim != q.dim:
        raise ValueError(f"dimension mismatch: {s.dim} vs {q.dim}")


# ---------------------------------------------------------------------------
# discrete measures


@dataclass(frozen=True)
class Traversal:
    """Coupled walk over vertex indices (0-based)."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.pairs or self.pairs[0] != (0, 0):
            raise ValueError("a traversal starts at (0, 0)")
        for (i0, j0), (i1, j1) in itertools.pairwise(self.pairs):
            di, dj = i1 - i0, j1 - j0
            if di not in (0, 1) or dj not in (0, 1) or di + dj < 1:
                raise ValueError(f"invalid traversal step {(i0, j0)} -> {(i1, j1)}")

    def cost(self, V: Curve, U: Curve) -> float:
        return max(float(np.linalg.norm(V.vertices[i] - U.vertices[j])) for i, j in self.pairs)


def discrete_frechet(V: Curve, U: Curve) -> float:
    """Discrete Fréchet distance by the O(m1*m2) coupling recurrence.

    Examples
    --------
    >>> discrete_frechet(Curve([[0, 0]]), Curve([[3, 4]]))
    5.0
    """
    _check_same_dim(V, U)
    dist = _pairwise(V.vertices, U.vertices)
    m1, m2 = dist.shape
    ca = np.empty_like(dist)
    ca[0, :] = np.maximum.accumulate(dist[0, :])
    ca[:, 0] = np.maximum.accumulate(dist[:, 0])
    for i in range(1, m1):
        row, prev = ca[i], ca[i - 1]
        for j in range(1, m2):
            row[j] = max(min(prev[j], prev[j - 1], row[j - 1]), dist[i, j])
    return float(ca[-1, -1])


def directed_discrete_hausdorff(A: Curve, B: Curve) -> float:
    """``max_a min_b |a - b|`` over the vertex sets."""
    _check_same_dim(A, B)
    return float(_pairwise(A.vertices, B.vertices).min(axis=1).max())


def discrete_hausdorff(A: Curve, B: Curve) -> float:
    """Symmetric Hausdorff distance between the vertex sets."""
    _check_same_dim(A, B)
    dist = _pairwise(A.vertices, B.vertices)
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def decide_discrete_frechet(s: Curve, q: Curve, r: float) -> bool:
    return discrete_frechet(s, q) <= r + ETA


def decide_discrete_hausdorff(s: Curve, q: Curve, r: float) -> bool:
    return discrete_hausdorff(s, q) <= r + ETA


# ---------------------------------------------------------------------------
# Hausdorff


_UNIT = SqrtInterval(SqrtExpr(0.0), SqrtExpr(1.0))
_by_lo = cmp_to_key(lambda x, y: int(compare_expr(x.lo, y.lo)))


def _covers_unit(intervals: list[Interval]) -> bool:
    # sweep: gaps within ETA are closed by compare_expr reporting EQ
    reach = SqrtExpr(0.0)
    for iv in sorted((i for i in intervals if i), key=_by_lo):
        if compare_expr(iv.lo, reach) == Ordering.GT:
            return False
        if compare_expr(iv.hi, reach) == Ordering.GT:
            reach = iv.hi
    return compare_expr(reach, SqrtExpr(1.0)) != Ordering.LT


def _point_near_curve(x: np.ndarray, s: Curve, r: float) -> bool:
    return any(p_vertex_edge(e, x, r) for e in _edges_or_point(s))


def _edges_or_point(s: Curve) -> list[Segment]:
    if s.m == 1:
        return [Segment(s.first, s.first)]
    return list(s.edges())


def decide_directed_hausdorff(q: Curve, s: Curve, r: float) -> bool:
    """Whether every point of ``q`` lies within ``r`` of ``s``.

    Each edge of ``q`` must be covered by the union of the stadiums around the
    edges of ``s``; every stadium contributes one parameter interval along the
    edge, and a sorted sweep checks that their union contains ``[0, 1]``.
    """
    _check_same_dim(q, s)
    if r < 0:
        return False
    if not all(_point_near_curve(v, s, r) for v in q.vertices):
        return False
    s_edges = _edges_or_point(s)
    for e in q.edges():
        if e.is_degenerate:
            continue
        pieces = [clip_unit(line_stadium_interval(e, f, r)) for f in s_edges]
        if not _covers_unit(pieces):
            return False
    return True


def decide_hausdorff(s: Curve, q: Curve, r: float) -> bool:
    """Symmetric Hausdorff decision: both directed decisions hold."""
    return decide_directed_hausdorff(q, s, r) and decide_directed_hausdorff(s, q, r)


# ---------------------------------------------------------------------------
# free space


def _free_interval(edge_curve: Curve, i: int, vertex: np.ndarray, r: float) -> Interval:
    """Free parameters on edge ``i`` of ``edge_curve`` w.r.t. ``vertex``, clipped to [0, 1]."""
    e = edge_curve.edge(i)
    if e.is_degenerate:
        return _UNIT if p_vertex_edge(e, vertex, r) else EMPTY
    return clip_unit(line_ball_interval(e, vertex, r))


@dataclass
class FreeSpaceDiagram:
    """Free space of two curves at radius ``r``.

    ``vertical[i][j]`` is the free part (parameter along edge ``j`` of ``q``) of
    the cell boundary where ``s`` sits at vertex ``i``; ``horizontal[i][j]`` is
    the free part (parameter along edge ``i`` of ``s``) where ``q`` sits at
    vertex ``j``.
    """

    s: Curve
    q: Curve
    r: float
    vertical: list[list[Interval]] = field(init=False)
    horizontal: list[list[Interval]] = field(init=False)

    def __post_init__(self):
        s, q, r = self.s, self.q, self.r
        self.vertical = [
            [_free_interval(q, j, s.vertices[i], r) for j in range(q.m - 1)] for i in range(s.m)
        ]
        self.horizontal = [
            [_free_interval(s, i, q.vertices[j], r) for j in range(q.m)] for i in range(s.m - 1)
        ]

    @property
    def shape(self) -> tuple[int, int]:
        return self.s.m - 1, self.q.m - 1

    def reachable(self) -> bool:
        """Monotone reachability from the start corner to the end corner."""
        start_ok, end_ok = p_endpoints(self.s, self.q, self.r)
        if not (start_ok and end_ok):
            return False
        ni, nj = self.shape
        V, H = self.vertical, self.horizontal
        LR = [[EMPTY] * nj for _ in range(ni + 1)]
        BR = [[EMPTY] * (nj + 1) for _ in range(ni)]
        # the left column and bottom row are reachable only along the border
        open_path = True
        for j in range(nj):
            iv = V[0][j]
            LR[0][j] = iv if open_path and _starts_at_zero(iv) else EMPTY
            open_path = open_path and _is_full(iv)
        open_path = True
        for i in range(ni):
            iv = H[i][0]
            BR[i][0] = iv if open_path and _starts_at_zero(iv) else EMPTY
            open_path = open_path and _is_full(iv)
        for i in range(ni):
            for j in range(nj):
                left, bottom = LR[i][j], BR[i][j]
                if not left and not bottom:
                    continue
                top = H[i][j + 1]
                if left:
                    BR[i][j + 1] = top
                else:
                    BR[i][j + 1] = _from(top, bottom.lo)
                right = V[i + 1][j]
                if bottom:
                    LR[i + 1][j] = right
                else:
                    LR[i + 1][j] = _from(right, left.lo)
        return bool(LR[ni][nj - 1]) or bool(BR[ni - 1][nj])

    def passable_graph(self) -> dict[tuple[int, int], list[tuple[int, int]]]:
        """Cells linked through boundaries with a non-empty free part."""
        ni, nj = self.shape
        adj: dict[tuple[int, int], list[tuple[int, int]]] = {
            (i, j): [] for i in range(ni) for j in range(nj)
        }
        for i in range(ni - 1):
            for j in range(nj):
                if self.vertical[i + 1][j]:
                    adj[(i, j)].append((i + 1, j))
                    adj[(i + 1, j)].append((i, j))
        for i in range(ni):
            for j in range(nj - 1):
                if self.horizontal[i][j + 1]:
                    adj[(i, j)].append((i, j + 1))
                    adj[(i, j + 1)].append((i, j))
        return adj


def _starts_at_zero(iv: Interval) -> bool:
    return bool(iv) and compare_expr(iv.lo, SqrtExpr(0.0)) == Ordering.EQ


def _is_full(iv: Interval) -> bool:
    return _starts_at_zero(iv) and compare_expr(iv.hi, SqrtExpr(1.0)) == Ordering.EQ


def _from(iv: Interval, lo: SqrtExpr) -> Interval:
    if not iv:
        return EMPTY
    return intersect(iv, SqrtInterval(lo, SqrtExpr(float("inf"))))


def _all_vertices_within(point: np.ndarray, curve: Curve, r: float) -> bool:
    # a ball is convex, so a whole polygonal curve is inside iff its vertices are
    diff = curve.vertices - point
    return bool(np.all(np.einsum("ij,ij->i", diff, diff) <= (r + ETA) ** 2))


def decide_weak_frechet(s: Curve, q: Curve, r: float) -> bool:
    """Weak Fréchet decision by connectivity of the cell graph.

    Neighbouring cells are linked when the vertex-edge predicate of their
    shared boundary holds; start and end corners must be free.
    """
    _check_same_dim(s, q)
    if r < 0:
        return False
    if s.m == 1:
        return _all_vertices_within(s.first, q, r)
    if q.m == 1:
        return _all_vertices_within(q.first, s, r)
    start_ok, end_ok = p_endpoints(s, q, r)
    if not (start_ok and end_ok):
        return False
    fsd = FreeSpaceDiagram(s, q, r)
    adj = fsd.passable_graph()
    goal = (s.m - 2, q.m - 2)
    seen = {(0, 0)}
    todo = deque([(0, 0)])
    while todo:
        cell = todo.popleft()
        if cell == goal:
            return True
        for nxt in adj[cell]:
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return False


def decide_frechet(s: Curve, q: Curve, r: float) -> bool:
    """Fréchet decision by monotone reachability through the free space.

    Examples
    --------
    >>> s, q = Curve([[0, 0], [1, 0]]), Curve([[0, 1], [1, 1]])
    >>> decide_frechet(s, q, 1.0), decide_frechet(s, q, 0.99)
    (True, False)
    """
    _check_same_dim(s, q)
    if r < 0:
        return False
    if s.m == 1:
        return _all_vertices_within(s.first, q, r)
    if q.m == 1:
        return _all_vertices_within(q.first, s, r)
    return FreeSpaceDiagram(s, q, r).reachable()


# ---------------------------------------------------------------------------
# dispatch


def decide(measure: Measure | str, s: Curve, q: Curve, r: float) -> bool:
    """Is ``s`` inside the ball of radius ``r`` centred at ``q``?"""
    measure = Measure.parse(measure)
    if measure is Measure.DISCRETE_FRECHET:
        return decide_discrete_frechet(s, q, r)
    if measure is Measure.DISCRETE_HAUSDORFF:
        return decide_discrete_hausdorff(s, q, r)
    if measure is Measure.HAUSDORFF_DIRECTED_FROM:
        return decide_directed_hausdorff(q, s, r)
    if measure is Measure.HAUSDORFF_DIRECTED_TO:
        return decide_directed_hausdorff(s, q, r)
    if measure is Measure.HAUSDORFF:
        return decide_hausdorff(s, q, r)
    if measure is Measure.WEAK_FRECHET:
        return decide_weak_frechet(s, q, r)
    return decide_frechet(s, q, r)


def value_by_bisection(measure: Measure | str, s: Curve, q: Curve, tol: float = 1e-6) -> float:
    """Smallest radius (to within ``tol``) at which ``decide`` holds.

    The bracket starts at ``[0, max vertex-vertex distance]``, which bounds
    every supported measure from above.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    measure = Measure.parse(measure)
    if decide(measure, s, q, 0.0):
        return 0.0
    lo, hi = 0.0, float(_pairwise(s.vertices, q.vertices).max())
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if decide(measure, s, q, mid):
            hi = mid
        else:
            lo = mid
    return hi


def distance(measure: Measure | str, s: Curve, q: Curve, tol: float = 1e-6) -> float:
    """Exact value for discrete measures, bisection value for continuous ones."""
    measure = Measure.parse(measure)
    if measure is Measure.DISCRETE_FRECHET:
        return discrete_frechet(s, q)
    if measure is Measure.DISCRETE_HAUSDORFF:
        return discrete_hausdorff(s, q)
    return value_by_bisection(measure, s, q, tol)
