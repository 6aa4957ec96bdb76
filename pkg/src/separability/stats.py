"""Two-sample statistics over empirical distributions.

Both statistics compare the empirical CDFs P and Q of two real samples:

* ``ks_statistic``      sup_x |P(x) - Q(x)|, the Kolmogorov-Smirnov distance
* ``wasserstein1``      integral of |P(x) - Q(x)| dx, the 1-Wasserstein
  (earth mover's) distance between the empirical measures

Empirical CDFs are right-continuous step functions; all evaluation happens
on the pooled sorted sample values, which carry every breakpoint of both
step functions.  For the supremum we also check the left limits at each
breakpoint; for step functions evaluated at their own breakpoints this is
subsumed by the right values, but it is kept explicit because it is the
correct recipe for sup-norm distances between cadlag functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import EmptySample

__all__ = [
    "EmpiricalCdf",
    "ks_statistic",
    "wasserstein1",
    "wasserstein1_normalized",
]


def _as_sample(x, name: str) -> NDArray[np.float64]:
    """Coerce to a 1-D float64 sample, rejecting empty or non-finite input."""
    arr = np.asarray(x, dtype=np.float64).ravel()
    if arr.size == 0:
        raise EmptySample(f"{name} sample is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} sample contains non-finite values")
    return arr


@dataclass(frozen=True)
class EmpiricalCdf:
    """Right-continuous empirical CDF of a finite sample.

    ``values`` is the sorted sample; ``evaluate(x)`` returns the fraction of
    sample points <= x, so it steps by multiples of 1/n at each distinct
    sample value and satisfies F(-inf) = 0, F(+inf) = 1.
    """

    values: NDArray[np.float64]

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64).ravel()
        if vals.size == 0:
            raise EmptySample("cannot build a CDF from an empty sample")
        if not np.all(np.isfinite(vals)):
            raise ValueError("sample contains non-finite values")
        vals = np.sort(vals)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def evaluate(self, x) -> NDArray[np.float64]:
        """F(x): fraction of sample values <= x (scalar or array x)."""
        pos = np.searchsorted(self.values, x, side="right")
        return pos / self.n

    def evaluate_left(self, x) -> NDArray[np.float64]:
        """F(x-): fraction of sample values strictly below x."""
        pos = np.searchsorted(self.values, x, side="left")
        return pos / self.n

    def __call__(self, x):
        return self.evaluate(x)


def ks_statistic(sample_a, sample_b) -> float:
    """Kolmogorov-Smirnov statistic sup_x |P(x) - Q(x)| between two samples.

    Exact for the empirical step functions: the supremum is attained at a
    pooled sample value (or its left limit), and both are checked.
    Returns a value in [0, 1]; 0 iff the sorted samples induce identical
    CDFs, 1 iff the sample ranges are disjoint.
    """
    a = _as_sample(sample_a, "first")
    b = _as_sample(sample_b, "second")
    pa, pb = EmpiricalCdf(a), EmpiricalCdf(b)
    grid = np.concatenate([pa.values, pb.values])
    right = np.abs(pa.evaluate(grid) - pb.evaluate(grid))
    left = np.abs(pa.evaluate_left(grid) - pb.evaluate_left(grid))
    return float(max(right.max(), left.max()))


def wasserstein1(sample_a, sample_b) -> float:
    """Exact 1-Wasserstein distance between two empirical distributions.

    Computed as the integral of |P(x) - Q(x)| over x: both CDFs are
    piecewise constant between consecutive pooled sample values, so the
    integral is a finite sum of rectangle areas.  Unbounded above in
    general (scales with the data units).
    """
    a = _as_sample(sample_a, "first")
    b = _as_sample(sample_b, "second")
    pa, pb = EmpiricalCdf(a), EmpiricalCdf(b)
    grid = np.sort(np.concatenate([pa.values, pb.values]))
    # |P - Q| is constant on [grid[k], grid[k+1]); sum gap * height.
    heights = np.abs(pa.evaluate(grid[:-1]) - pb.evaluate(grid[:-1]))
    gaps = np.diff(grid)
    return float(np.dot(gaps, heights))


def wasserstein1_normalized(sample_a, sample_b) -> float:
    """1-Wasserstein distance rescaled by the pooled sample range.

    Dividing by max - min of the pooled sample bounds the value to [0, 1],
    making it comparable with ``ks_statistic``.  When the pooled range is
    zero every sample value coincides, the distributions are identical, and
    the distance is 0 by convention.
    """
    a = _as_sample(sample_a, "first")
    b = _as_sample(sample_b, "second")
    pooled_range = float(max(a.max(), b.max()) - min(a.min(), b.min()))
    if pooled_range == 0.0:
        return 0.0
    return wasserstein1(a, b) / pooled_range
