"""
Counting curves in a ball, exactly and from a sample
=====================================================

A random sample whose size depends only on the VC dimension estimate,
the accuracy and the failure probability gives the fraction of curves in
any ball to within an additive error.
"""

import numpy as np

from curveballs.io import generate_synthetic
from curveballs.predicates import Curve
from curveballs.ranges import RangeQuery, SampleSpec, approx_count, exact_count, kde, sample_size

walks = generate_synthetic("random_walk", {"n": 5000, "m": 10, "d": 2}, seed=1)
center = generate_synthetic("random_walk", {"n": 1, "m": 10, "d": 2}, seed=2)[0]
q = RangeQuery("discrete-frechet", center, radius=3.0)

exact = exact_count(walks, q).count
spec = SampleSpec(epsilon=0.05, delta=0.1, nu=5)
print("sample size:", sample_size(spec), "of", len(walks))
print("exact count:", exact)

errors = []
for seed in range(20):
    est = approx_count(walks, q, spec, seed).estimate
    errors.append(abs(est - exact) / len(walks))
print(f"additive error over 20 seeds: max {max(errors):.4f}, mean {np.mean(errors):.4f} (target {spec.epsilon})")

# kernel density with K(x, p) = exp(-d(x, p)^2); shrink the data so the
# kernel is not vanishingly small
small = generate_synthetic("perturbed_template", {"n": 200, "template": [[0, 0], [1, 0], [2, 1]], "noise": 0.3}, seed=3)
for probe in ([[0, 0], [1, 0], [2, 1]], [[0, 2], [1, 2], [2, 3]]):
    print("kde at", probe[0], "->", round(kde(small, Curve(probe), "frechet", tol=1e-6), 4))
