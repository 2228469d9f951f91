"""Shattering experiments for metric balls on curves.

Builds the unit-circle lower-bound configuration, enumerates induced subsets
of a ground set, searches for the largest shattered subset, and evaluates the
reference growth formulas (all hidden constants set to 1, logs base 2).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .distances import Measure, decide
from .predicates import Curve
from .ranges import RangeQuery

__all__ = [
    "CircleConstruction",
    "ShatterReport",
    "circle_construction",
    "induced_subsets",
    "shattered_subset_search",
    "bound_formulas",
    "lower_bound_formula",
    "sauer_shelah_bound",
    "critical_radius_queries",
    "circle_report",
    "MAX_GROUND",
]

MAX_GROUND = 24


@dataclass(frozen=True)
class CircleConstruction:
    """``k`` points on the unit circle and a query generator realizing any subset.

    ``make_query(T)`` returns a ``k``-vertex center curve with one vertex at
    ``-(R - 1) p`` for every excluded point ``p`` and the remaining vertices at
    the origin. The ball of radius ``R - eps`` around it holds exactly ``T``.
    """

    k: int
    R: float
    eps: float
    ground: tuple[Curve, ...]
    measure: Measure = Measure.DISCRETE_HAUSDORFF

    @property
    def radius(self) -> float:
        return self.R - self.eps

    @property
    def points(self) -> np.ndarray:
        return np.stack([c.first for c in self.ground])

    def make_query(self, subset: Iterable[int], measure: Measure | str | None = None) -> RangeQuery:
        keep = set(subset)
        if not keep <= set(range(self.k)):
            raise ValueError(f"subset {sorted(keep)} is not a subset of range({self.k})")
        verts = np.zeros((self.k, 2))
        for slot, i in enumerate(i for i in range(self.k) if i not in keep):
            verts[slot] = -(self.R - 1.0) * self.points[i]
        name = "q{" + ",".join(map(str, sorted(keep))) + "}"
        return RangeQuery(measure or self.measure, Curve(verts, name), self.radius)

    def all_queries(self, measure: Measure | str | None = None) -> list[RangeQuery]:
        return [self.make_query(_bits(mask, self.k), measure) for mask in range(1 << self.k)]


def _bits(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def circle_construction(k: int, R: float = 10.0, measure: Measure | str = Measure.DISCRETE_HAUSDORFF) -> CircleConstruction:
    """Lower-bound configuration shattering ``k`` points with ``k``-vertex centers.

    The margin ``eps`` shrinks with the angular gap so that an excluding vertex
    removes only its own point: ``eps = min(1/2, (1 - cos(2 pi / k)) / 2)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not R > 4:
        raise ValueError("R must exceed 4")
    angles = 2.0 * math.pi * np.arange(k) / k
    pts = np.column_stack([np.cos(angles), np.sin(angles)])
    gap = 1.0 - math.cos(2.0 * math.pi / k) if k > 1 else 1.0
    eps = min(0.5, gap / 2.0)
    ground = tuple(Curve(p[None, :], f"p{i}") for i, p in enumerate(pts))
    return CircleConstruction(k, float(R), eps, ground, Measure.parse(measure))


def induced_subsets(ground: Sequence[Curve], queries: Iterable[RangeQuery]) -> set[int]:
    """Distinct traces of the query balls on ``ground`` as bitmasks (bit i = ground[i])."""
    out: set[int] = set()
    for q in queries:
        mask = 0
        for i, c in enumerate(ground):
            if decide(q.measure, c, q.center, q.radius):
                mask |= 1 << i
        out.add(mask)
    return out


def _shatters(members: Sequence[int], masks: Iterable[int]) -> bool:
    ymask = 0
    for i in members:
        ymask |= 1 << i
    traces = {m & ymask for m in masks}
    return len(traces) == 1 << len(members)


def shattered_subset_search(
    ground: Sequence[Curve],
    queries: Iterable[RangeQuery] | None = None,
    max_size: int | None = None,
    *,
    masks: set[int] | None = None,
) -> int:
    """Size of the largest shattered subset of ``ground`` (up to ``max_size``).

    Level-wise search: a candidate of size ``c`` is only tested when all of its
    ``(c-1)``-subsets are shattered. Pass precomputed ``masks`` to skip the
    query evaluation.
    """
    t = len(ground)
    if t > MAX_GROUND:
        raise ValueError(f"exhaustive search is limited to {MAX_GROUND} ground elements")
    max_size = t if max_size is None else max_size
    if not 0 <= max_size <= t:
        raise ValueError("max_size must lie in [0, len(ground)]")
    if masks is None:
        if queries is None:
            raise ValueError("give either queries or masks")
        masks = induced_subsets(ground, queries)
    masks = set(masks)
    if not masks:
        return 0
    best = 0
    level = [(i,) for i in range(t) if _shatters((i,), masks)]
    while level and best < max_size:
        best = len(level[0])
        if best == max_size:
            break
        known = set(level)
        nxt = []
        for a, b in itertools.combinations(level, 2):
            # join sets sharing all but their last element
            if a[:-1] != b[:-1]:
                continue
            cand = a + (b[-1],)
            if all(sub in known for sub in itertools.combinations(cand, len(cand) - 1)) and _shatters(cand, masks):
                nxt.append(cand)
        level = nxt
    return best


_DISCRETE = (Measure.DISCRETE_HAUSDORFF, Measure.DISCRETE_FRECHET)


def bound_formulas(d: int, k: int, m: int, measure: Measure | str) -> float:
    """Reference VC-dimension curve with unit constants and base-2 logs.

    ``d k log(dkm)`` for discrete measures, ``d^2 k log(dkm)`` for weak
    Fréchet, ``d^2 k^2 log(dkm)`` for Hausdorff and Fréchet.

    >>> bound_formulas(2, 4, 16, "frechet")
    448.0
    """
    if min(d, k, m) < 1:
        raise ValueError("d, k, m must be positive integers")
    measure = Measure.parse(measure)
    lg = math.log2(d * k * m)
    if measure in _DISCRETE:
        return float(d * k * lg)
    if measure is Measure.WEAK_FRECHET:
        return float(d * d * k * lg)
    return float(d * d * k * k * lg)


def lower_bound_formula(k: int, m: int) -> float:
    """``max(k, log2 m)``, the planar lower-bound reference."""
    return float(max(k, math.log2(m)))


def sauer_shelah_bound(t: int, nu: float) -> int:
    """Maximum number of traces on ``t`` elements for VC dimension ``floor(nu)``."""
    v = int(math.floor(nu))
    return sum(math.comb(t, i) for i in range(0, min(v, t) + 1))


def critical_radius_queries(
    ground: Sequence[Curve], centers: Sequence[Curve], measure: Measure | str, distance_fn: Callable[[Curve, Curve], float]
) -> list[RangeQuery]:
    """Queries at every center-to-ground distance and the midpoints between
    consecutive distances; traces only change at these radii."""
    out = []
    for c in centers:
        ds = sorted({distance_fn(g, c) for g in ground})
        radii = list(ds) + [(a + b) / 2 for a, b in zip(ds, ds[1:])]
        if ds:
            radii.append(max(ds[0] / 2, 0.0))
        out.extend(RangeQuery(measure, c, r) for r in sorted(set(radii)))
    return out


@dataclass(frozen=True)
class ShatterReport:
    ground_size: int
    distinct_subsets: int
    largest_shattered: int
    bound_formula_value: float
    construction: dict

    def __post_init__(self):
        if self.largest_shattered > self.ground_size:
            raise ValueError("shattered subset larger than the ground set")
        if self.distinct_subsets > 1 << self.ground_size:
            raise ValueError("more traces than subsets")

    def to_dict(self) -> dict:
        return asdict(self)


def circle_report(k: int, R: float = 10.0, measure: Measure | str = Measure.DISCRETE_HAUSDORFF) -> ShatterReport:
    """Run the circle construction for ``k`` and summarize the outcome."""
    cc = circle_construction(k, R, measure)
    masks = induced_subsets(cc.ground, cc.all_queries())
    return ShatterReport(
        ground_size=k,
        distinct_subsets=len(masks),
        largest_shattered=shattered_subset_search(cc.ground, masks=masks),
        bound_formula_value=bound_formulas(2, k, 1, cc.measure),
        construction={"kind": "circle", "k": k, "R": cc.R, "eps": cc.eps, "measure": cc.measure.value},
    )
