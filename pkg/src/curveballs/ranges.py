"""Metric-ball range counting, sampling bounds and kernel density estimates
over a dataset of curves."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .distances import Measure, decide, distance
from .geometry import ETA
from .predicates import Curve

__all__ = [
    "RNG_ALGORITHM",
    "Dataset",
    "RangeQuery",
    "SampleSpec",
    "CountResult",
    "ApproxResult",
    "exact_count",
    "approx_count",
    "draw_sample",
    "sample_size",
    "separator_sample_size",
    "kde_sample_bound",
    "kde",
    "kde_many",
    "membership",
    "distances_to",
]

#: Identifier of the PRNG used for sampling, echoed in result metadata.
RNG_ALGORITHM = "numpy.random.Generator(PCG64)"


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable collection of curves with unique ids and a common dimension."""

    curves: tuple[Curve, ...]
    _index: dict[str, int] = field(init=False, repr=False)
    _stack: np.ndarray | None = field(init=False, repr=False)

    def __init__(self, curves: Iterable[Curve]):
        curves = tuple(curves)
        index: dict[str, int] = {}
        for i, c in enumerate(curves):
            if c.id in index:
                raise ValueError(f"duplicate curve id {c.id!r}")
            index[c.id] = i
            if c.dim != curves[0].dim:
                raise ValueError(
                    f"curve {c.id!r} has dimension {c.dim}, expected {curves[0].dim}"
                )
        object.__setattr__(self, "curves", curves)
        object.__setattr__(self, "_index", index)
        # equal-length datasets get a (n, m, d) stack for vectorized discrete measures
        stack = None
        if curves and len({c.m for c in curves}) == 1:
            stack = np.stack([c.vertices for c in curves])
            stack.flags.writeable = False
        object.__setattr__(self, "_stack", stack)

    @property
    def dim(self) -> int:
        return self.curves[0].dim if self.curves else 0

    @property
    def max_complexity(self) -> int:
        return max((c.m for c in self.curves), default=0)

    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.curves]

    def __len__(self) -> int:
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __getitem__(self, key: int | str) -> Curve:
        if isinstance(key, str):
            return self.curves[self._index[key]]
        return self.curves[key]

    def subset(self, indices: Sequence[int]) -> Dataset:
        return Dataset(self.curves[i] for i in indices)


@dataclass(frozen=True)
class RangeQuery:
    """Metric ball of radius ``radius`` around ``center`` under ``measure``."""

    measure: Measure
    center: Curve
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "measure", Measure.parse(self.measure))
        if not self.radius >= 0:
            raise ValueError("radius must be non-negative")


@dataclass(frozen=True)
class SampleSpec:
    """Accuracy ``epsilon``, failure probability ``delta``, VC-dimension estimate
    ``nu`` and the constant hidden in the sample-size bound."""

    epsilon: float
    delta: float
    nu: float
    constant_C: float = 0.5

    def __post_init__(self):
        if not 0 < self.epsilon <= 1:
            raise ValueError("epsilon must lie in (0, 1]")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if not self.nu > 0:
            raise ValueError("nu must be positive")
        if not self.constant_C > 0:
            raise ValueError("C must be positive")


class CountResult(NamedTuple):
    count: int
    ids: list[str]


class ApproxResult(NamedTuple):
    estimate: float
    sample_ids: list[str]


# ---------------------------------------------------------------------------
# sample sizes


def sample_size(spec: SampleSpec) -> int:
    """``ceil(C / eps^2 * (nu + ln(1/delta)))``: eps-sample size for additive error eps.

    >>> sample_size(SampleSpec(0.1, 0.05, 10))
    650
    """
    eps, delta, nu, C = spec.epsilon, spec.delta, spec.nu, spec.constant_C
    return math.ceil(C / eps**2 * (nu + math.log(1.0 / delta)))


def separator_sample_size(spec: SampleSpec) -> int:
    """``ceil(C * nu / eps * ln(nu / (eps * delta)))``: sample size after which any
    perfect separator of the sample misclassifies at most an eps fraction."""
    eps, delta, nu, C = spec.epsilon, spec.delta, spec.nu, spec.constant_C
    return math.ceil(C * nu / eps * math.log(nu / (eps * delta)))


def kde_sample_bound(spec: SampleSpec) -> int:
    """Sample size for a uniform (sup-norm) eps approximation of the kernel
    density estimate; same arithmetic as :func:`sample_size`."""
    return sample_size(spec)


# ---------------------------------------------------------------------------
# vectorized discrete measures


def _batch_pairwise(stack: np.ndarray, center: np.ndarray) -> np.ndarray:
    diff = stack[:, :, None, :] - center[None, None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def _batch_discrete_frechet(stack: np.ndarray, center: np.ndarray) -> np.ndarray:
    dist = _batch_pairwise(stack, center)
    _, m, k = dist.shape
    ca = np.empty_like(dist)
    ca[:, 0, :] = np.maximum.accumulate(dist[:, 0, :], axis=1)
    ca[:, :, 0] = np.maximum.accumulate(dist[:, :, 0], axis=1)
    for i in range(1, m):
        for j in range(1, k):
            best = np.minimum(np.minimum(ca[:, i - 1, j], ca[:, i - 1, j - 1]), ca[:, i, j - 1])
            ca[:, i, j] = np.maximum(best, dist[:, i, j])
    return ca[:, -1, -1]


def _batch_discrete_hausdorff(stack: np.ndarray, center: np.ndarray) -> np.ndarray:
    dist = _batch_pairwise(stack, center)
    return np.maximum(dist.min(axis=2).max(axis=1), dist.min(axis=1).max(axis=1))


def _check_dim(ds: Dataset, center: Curve) -> None:
    if len(ds) and center.dim != ds.dim:
        raise ValueError(f"query dimension {center.dim} does not match dataset dimension {ds.dim}")


def distances_to(ds: Dataset, center: Curve, measure: Measure | str, tol: float = 1e-6) -> np.ndarray:
    """Distance from every curve of ``ds`` to ``center`` (bisection for continuous measures)."""
    measure = Measure.parse(measure)
    _check_dim(ds, center)
    if ds._stack is not None and measure is Measure.DISCRETE_FRECHET:
        return _batch_discrete_frechet(ds._stack, center.vertices)
    if ds._stack is not None and measure is Measure.DISCRETE_HAUSDORFF:
        return _batch_discrete_hausdorff(ds._stack, center.vertices)
    return np.array([distance(measure, c, center, tol) for c in ds.curves], dtype=float)


def membership(ds: Dataset, q: RangeQuery) -> np.ndarray:
    """Boolean mask of curves inside the query ball."""
    _check_dim(ds, q.center)
    if q.measure.is_discrete and ds._stack is not None:
        return distances_to(ds, q.center, q.measure) <= q.radius + ETA
    return np.fromiter(
        (decide(q.measure, c, q.center, q.radius) for c in ds.curves), dtype=bool, count=len(ds)
    )


# ---------------------------------------------------------------------------
# queries


def exact_count(ds: Dataset, q: RangeQuery) -> CountResult:
    """Linear scan; matching ids are returned sorted."""
    mask = membership(ds, q)
    ids = sorted(c.id for c, inside in zip(ds.curves, mask) if inside)
    return CountResult(len(ids), ids)


def draw_sample(ds: Dataset, n: int, seed: int) -> Dataset:
    """Uniform sample of ``n`` curves without replacement, kept in dataset order.

    Asking for at least ``len(ds)`` curves returns the whole dataset.
    """
    if len(ds) == 0:
        raise ValueError("cannot sample from an empty dataset")
    if n < 1:
        raise ValueError("sample size must be positive")
    if n >= len(ds):
        return ds
    rng = np.random.default_rng(seed)
    return ds.subset(np.sort(rng.choice(len(ds), size=n, replace=False)))


def approx_count(ds: Dataset, q: RangeQuery, spec: SampleSpec, seed: int) -> ApproxResult:
    """Estimate the range count from a uniform sample drawn without replacement.

    When the sample size reaches ``len(ds)`` the whole dataset is scanned and the
    estimate is exact.
    """
    sample = draw_sample(ds, sample_size(spec), seed)
    inside = membership(sample, q)
    # hits * N / n is exact when the sample is the whole dataset
    return ApproxResult(int(inside.sum()) * len(ds) / len(sample), [c.id for c in sample.curves])


def kde(ds: Dataset, x: Curve, measure: Measure | str, tol: float = 1e-6) -> float:
    """``mean(exp(-d(x, p)^2))`` over the curves ``p`` of ``ds``."""
    if len(ds) == 0:
        raise ValueError("kde of an empty dataset")
    d = distances_to(ds, x, measure, tol)
    return float(np.mean(np.exp(-(d**2))))


def kde_many(ds: Dataset, probes: Sequence[Curve], measure: Measure | str, tol: float = 1e-6) -> np.ndarray:
    return np.array([kde(ds, x, measure, tol) for x in probes])
