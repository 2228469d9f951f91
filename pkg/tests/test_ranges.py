import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curveballs.distances import Measure, decide, discrete_frechet, distance, value_by_bisection
from curveballs.predicates import Curve
from curveballs.ranges import (
    Dataset,
    RangeQuery,
    SampleSpec,
    approx_count,
    distances_to,
    exact_count,
    kde,
    kde_many,
    kde_sample_bound,
    sample_size,
    separator_sample_size,
)


def random_dataset(rng, n, m, d=2, ragged=False):
    out = []
    for i in range(n):
        mi = int(rng.integers(1, m + 1)) if ragged else m
        out.append(Curve(rng.uniform(-1, 1, size=(mi, d)), f"c{i:03d}"))
    return Dataset(out)


def test_dataset_validation():
    a, b = Curve([[0, 0]], "a"), Curve([[0, 0, 0]], "b")
    with pytest.raises(ValueError, match="duplicate"):
        Dataset([a, Curve([[1, 1]], "a")])
    with pytest.raises(ValueError, match="dimension"):
        Dataset([a, b])
    ds = Dataset([a, Curve([[1, 1], [2, 2]], "c")])
    assert ds["c"].m == 2 and ds[0].id == "a"
    assert (ds.dim, ds.max_complexity, len(ds)) == (2, 2, 2)


def test_query_validation():
    with pytest.raises(ValueError):
        RangeQuery("frechet", Curve([[0, 0]]), -1)
    with pytest.raises(ValueError):
        exact_count(Dataset([Curve([[0, 0]], "a")]), RangeQuery("frechet", Curve([[0, 0, 0]]), 1))


# ---------------------------------------------------------------------------
# exact counting


def test_exact_count_copies_of_center():
    center = Curve([[0, 0], [1, 1]], "q")
    ds = Dataset(Curve(center.vertices, f"copy{i}") for i in range(3))
    for m in Measure:
        assert exact_count(ds, RangeQuery(m, center, 0.0)).count == 3


def test_exact_count_closed_ball():
    center = Curve([[0, 0], [1, 0]])
    ds = Dataset([Curve([[0, 1], [1, 1]], "on"), Curve([[0, 1.01], [1, 1.01]], "off")])
    assert value_by_bisection("frechet", ds["on"], center, 1e-9) == pytest.approx(1.0, abs=1e-8)
    assert exact_count(ds, RangeQuery("frechet", center, 1.0)) == (1, ["on"])


@pytest.mark.parametrize("measure", list(Measure))
def test_exact_count_matches_per_curve_decisions(measure):
    rng = np.random.default_rng(7)
    ds = random_dataset(rng, 100 if measure.is_discrete else 40, 4)
    center = Curve(rng.uniform(-1, 1, size=(3, 2)), "q")
    q = RangeQuery(measure, center, 1.0)
    expected = sorted(c.id for c in ds if decide(measure, c, center, 1.0))
    assert exact_count(ds, q).ids == expected


@pytest.mark.parametrize("measure", [Measure.DISCRETE_FRECHET, Measure.DISCRETE_HAUSDORFF])
def test_vectorized_distances_match_scalar(measure, rng):
    ds = random_dataset(rng, 200, 6, d=3)
    center = Curve(rng.uniform(-1, 1, size=(4, 3)))
    batch = distances_to(ds, center, measure)
    scalar = [distance(measure, c, center) for c in ds]
    np.testing.assert_array_equal(batch, scalar)


def test_ragged_dataset_falls_back(rng):
    ds = random_dataset(rng, 30, 5, ragged=True)
    center = Curve(rng.uniform(-1, 1, size=(3, 2)))
    np.testing.assert_array_equal(
        distances_to(ds, center, "discrete-frechet"), [discrete_frechet(c, center) for c in ds]
    )


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0, 2), st.floats(0, 1))
def test_count_permutation_invariant_and_monotone(seed, r, extra):
    rng = np.random.default_rng(seed)
    ds = random_dataset(rng, 25, 3)
    center = Curve(rng.uniform(-1, 1, size=(2, 2)))
    for m in (Measure.DISCRETE_FRECHET, Measure.HAUSDORFF, Measure.FRECHET):
        base = exact_count(ds, RangeQuery(m, center, r))
        shuffled = ds.subset(rng.permutation(len(ds)))
        assert exact_count(shuffled, RangeQuery(m, center, r)) == base
        assert exact_count(ds, RangeQuery(m, center, r + extra)).count >= base.count


# ---------------------------------------------------------------------------
# sample sizes


def test_sample_size_examples():
    assert 50 * (10 + math.log(20)) == pytest.approx(649.78, abs=0.01)
    assert sample_size(SampleSpec(0.1, 0.05, 10, 0.5)) == 650
    assert sample_size(SampleSpec(1.0, 0.5, 1, 1.0)) == 2
    assert kde_sample_bound(SampleSpec(0.1, 0.05, 10, 0.5)) == 650


def test_separator_sample_size():
    # 0.5 * 10 / 0.1 * ln(10 / 0.005) = 50 ln 2000 = 380.05...
    assert separator_sample_size(SampleSpec(0.1, 0.05, 10, 0.5)) == math.ceil(50 * math.log(2000))
    assert separator_sample_size(SampleSpec(0.1, 0.05, 10, 0.5)) == 381


@pytest.mark.parametrize("bad", [(0, 0.1, 1), (1.5, 0.1, 1), (0.1, 0, 1), (0.1, 1, 1), (0.1, 0.1, 0), (0.1, 0.1, 1, 0)])
def test_sample_spec_rejects(bad):
    with pytest.raises(ValueError):
        SampleSpec(*bad)


# ---------------------------------------------------------------------------
# approximate counting


def test_approx_count_full_sample_equals_exact(rng):
    ds = random_dataset(rng, 50, 4)
    q = RangeQuery("discrete-frechet", Curve(rng.uniform(-1, 1, size=(3, 2))), 1.2)
    res = approx_count(ds, q, SampleSpec(0.1, 0.05, 10), seed=3)
    assert res.estimate == exact_count(ds, q).count
    assert len(res.sample_ids) == len(ds)


def test_approx_count_all_inside(rng):
    ds = random_dataset(rng, 2000, 3)
    q = RangeQuery("discrete-hausdorff", Curve([[0, 0]]), 10.0)
    res = approx_count(ds, q, SampleSpec(0.2, 0.1, 2), seed=1)
    assert len(res.sample_ids) < len(ds)
    assert res.estimate == len(ds)


def test_approx_count_deterministic(rng):
    ds = random_dataset(rng, 3000, 3)
    q = RangeQuery("discrete-frechet", Curve(rng.uniform(-1, 1, size=(3, 2))), 1.0)
    spec = SampleSpec(0.2, 0.1, 2)
    a, b = approx_count(ds, q, spec, 11), approx_count(ds, q, spec, 11)
    assert a == b
    assert approx_count(ds, q, spec, 12).sample_ids != a.sample_ids
    assert len(set(a.sample_ids)) == len(a.sample_ids) == sample_size(spec)


def test_approx_count_empty_dataset():
    with pytest.raises(ValueError):
        approx_count(Dataset([]), RangeQuery("frechet", Curve([[0, 0]]), 1), SampleSpec(0.1, 0.1, 1), 0)


# ---------------------------------------------------------------------------
# kde


def test_kde_examples():
    x = Curve([[0, 0], [1, 1]], "x")
    assert kde(Dataset([x]), x, "frechet") == 1.0
    far = Curve([[0, 0]], "far")
    assert kde(Dataset([far]), Curve([[3, 4]]), "discrete-frechet") == pytest.approx(math.exp(-25), rel=1e-12)
    with pytest.raises(ValueError):
        kde(Dataset([]), x, "frechet")


def test_kde_matches_pairwise_composition(rng):
    ds = random_dataset(rng, 20, 3)
    x = Curve(rng.uniform(-1, 1, size=(3, 2)))
    tol = 1e-6
    for m in (Measure.DISCRETE_FRECHET, Measure.FRECHET, Measure.HAUSDORFF):
        d = np.array([distance(m, c, x, 1e-10) for c in ds])
        expected = np.mean(np.exp(-(d**2)))
        bound = len(ds) * 2 * d.max() * tol
        assert abs(kde(ds, x, m, tol) - expected) <= bound


def test_kde_range(rng):
    ds = random_dataset(rng, 30, 3)
    values = kde_many(ds, [Curve(rng.uniform(-1, 1, size=(3, 2))) for _ in range(5)], "discrete-frechet")
    assert np.all((values > 0) & (values < 1))
