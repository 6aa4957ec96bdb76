"""Distance metrics and pairwise-distance computation.

Six metrics are supported: euclidean, cityblock, chebyshev, correlation,
cosine, and mahalanobis.  Correlation and cosine distances are clamped to
[0, 2] to absorb floating-point excursions past the analytic bounds;
mahalanobis requires a fitted inverse-covariance context (see
``fit_mahalanobis``).

Pairwise distances over a point set are stored in condensed form: a flat
float64 vector holding the strict upper triangle row by row, entry
``n*i - i*(i+1)//2 + (j - i - 1)`` for the pair (i, j) with i < j.  The
condensed vector is computed in fixed-size row blocks, each block a
triangle (pdist) plus a rectangle (cdist) against the remaining rows.  The
block size never depends on the worker count, so every entry is produced
by the same library call regardless of parallelism and results are
bit-identical for any ``workers`` value.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.distance import cdist, pdist

from .errors import DegenerateClass, DegenerateVector, SingularCovariance

__all__ = [
    "METRIC_NAMES",
    "DistanceMetric",
    "DistanceSet",
    "distance",
    "icd_set",
    "bcd_set",
    "fit_mahalanobis",
    "pairwise_condensed",
    "condensed_index",
]

METRIC_NAMES = (
    "euclidean",
    "cityblock",
    "chebyshev",
    "correlation",
    "cosine",
    "mahalanobis",
)

# Correlation/cosine distances live in [0, 2] analytically; rounding can
# push a hair past either end, so those metrics are clamped after computing.
_CLAMPED_METRICS = frozenset({"correlation", "cosine"})

_BLOCK_ROWS = 128  # fixed block size keeps results independent of workers


@dataclass(frozen=True)
class DistanceMetric:
    """A metric name plus any fitted context it needs.

    For ``mahalanobis`` the context is the inverse of the regularized
    covariance matrix and must be symmetric positive definite; the other
    metrics carry no context.
    """

    name: str
    inverse_covariance: NDArray[np.float64] | None = None

    def __post_init__(self):
        if self.name not in METRIC_NAMES:
            raise ValueError(
                f"unknown metric {self.name!r}; expected one of {', '.join(METRIC_NAMES)}"
            )
        if self.name == "mahalanobis":
            vi = self.inverse_covariance
            if vi is None:
                raise SingularCovariance(
                    "mahalanobis requires a fitted context; call fit_mahalanobis first"
                )
            vi = np.asarray(vi, dtype=np.float64)
            if vi.ndim != 2 or vi.shape[0] != vi.shape[1]:
                raise ValueError("inverse covariance must be a square matrix")
            if not np.allclose(vi, vi.T, rtol=1e-10, atol=1e-12):
                raise SingularCovariance("inverse covariance is not symmetric")
            try:
                np.linalg.cholesky(vi + vi.T)  # symmetrized PD check
            except np.linalg.LinAlgError:
                raise SingularCovariance(
                    "inverse covariance is not positive definite"
                ) from None
            vi = vi.copy()
            vi.setflags(write=False)
            object.__setattr__(self, "inverse_covariance", vi)
        elif self.inverse_covariance is not None:
            raise ValueError(f"metric {self.name!r} takes no covariance context")


def resolve_metric(metric: DistanceMetric | str) -> DistanceMetric:
    """Accept a metric name or an already-built DistanceMetric."""
    if isinstance(metric, DistanceMetric):
        return metric
    return DistanceMetric(str(metric))


def _scipy_kwargs(metric: DistanceMetric) -> dict:
    if metric.name == "mahalanobis":
        return {"metric": "mahalanobis", "VI": metric.inverse_covariance}
    return {"metric": metric.name}


def _check_vectors(points: NDArray[np.float64], metric: DistanceMetric, offset: int = 0):
    """Reject rows on which the metric is undefined.

    Correlation needs per-vector variance > 0; cosine needs norm > 0.
    ``offset`` shifts reported indices when ``points`` is a slice.
    """
    if metric.name == "correlation":
        centered = points - points.mean(axis=1, keepdims=True)
        bad = np.flatnonzero(~np.any(centered != 0.0, axis=1))
        if bad.size:
            idx = int(bad[0]) + offset
            raise DegenerateVector(
                f"correlation distance undefined for constant vector at index {idx}",
                index=idx,
            )
    elif metric.name == "cosine":
        bad = np.flatnonzero(~np.any(points != 0.0, axis=1))
        if bad.size:
            idx = int(bad[0]) + offset
            raise DegenerateVector(
                f"cosine distance undefined for zero vector at index {idx}", index=idx
            )


def _as_points(points, name: str = "points") -> NDArray[np.float64]:
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a 2-D array with at least one feature")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def distance(a, b, metric: DistanceMetric | str = "euclidean") -> float:
    """Distance between two feature vectors under the chosen metric.

    Symmetric and non-negative for all supported metrics; correlation and
    cosine are clamped to [0, 2].
    """
    m = resolve_metric(metric)
    av = _as_points(a, "a")
    bv = _as_points(b, "b")
    if av.shape != bv.shape or av.shape[0] != 1:
        raise ValueError("a and b must be single vectors of equal dimension")
    _check_vectors(av, m)
    _check_vectors(bv, m)
    d = float(cdist(av, bv, **_scipy_kwargs(m))[0, 0])
    if m.name in _CLAMPED_METRICS:
        d = min(max(d, 0.0), 2.0)
    return d


def condensed_index(n: int, i, j):
    """Index of pair (i, j), i < j, in the condensed vector for n points."""
    i = np.asarray(i, dtype=np.int64)
    j = np.asarray(j, dtype=np.int64)
    return n * i - i * (i + 1) // 2 + (j - i - 1)


def _block_ranges(n: int):
    return [(r, min(r + _BLOCK_ROWS, n)) for r in range(0, n, _BLOCK_ROWS)]


def pairwise_condensed(
    points,
    metric: DistanceMetric | str = "euclidean",
    workers: int = 1,
) -> NDArray[np.float64]:
    """All pairwise distances among ``points`` as a condensed vector.

    Returns a float64 vector of length n*(n-1)//2 holding the strict upper
    triangle of the distance matrix (see ``condensed_index``).  ``workers``
    only controls thread-level parallelism over fixed row blocks; the
    numeric result is identical for every worker count.
    """
    m = resolve_metric(metric)
    pts = _as_points(points)
    n = pts.shape[0]
    if n < 2:
        raise DegenerateClass("pairwise distances need at least 2 points")
    _check_vectors(pts, m)
    kwargs = _scipy_kwargs(m)
    out = np.empty(n * (n - 1) // 2, dtype=np.float64)

    def fill_block(r0: int, r1: int):
        block = pts[r0:r1]
        tri = pdist(block, **kwargs) if r1 - r0 >= 2 else None
        rect = cdist(block, pts[r1:], **kwargs) if r1 < n else None
        width = r1 - r0
        for local in range(width):
            i = r0 + local
            start = n * i - i * (i + 1) // 2
            if tri is not None and local < width - 1:
                t0 = local * width - local * (local + 1) // 2
                out[start : start + width - local - 1] = tri[t0 : t0 + width - local - 1]
            if rect is not None:
                out[start + width - local - 1 : start + n - i - 1] = rect[local]

    blocks = _block_ranges(n)
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda rr: fill_block(*rr), blocks))
    else:
        for r0, r1 in blocks:
            fill_block(r0, r1)

    if m.name in _CLAMPED_METRICS:
        np.clip(out, 0.0, 2.0, out=out)
    return out


def pairwise_cross(
    points_a,
    points_b,
    metric: DistanceMetric | str = "euclidean",
) -> NDArray[np.float64]:
    """Distance matrix between two point sets (rows of a x rows of b)."""
    m = resolve_metric(metric)
    pa = _as_points(points_a, "points_a")
    pb = _as_points(points_b, "points_b")
    if pa.shape[1] != pb.shape[1]:
        raise ValueError("point sets must share the feature dimension")
    _check_vectors(pa, m)
    _check_vectors(pb, m, offset=pa.shape[0])
    d = cdist(pa, pb, **_scipy_kwargs(m))
    if m.name in _CLAMPED_METRICS:
        np.clip(d, 0.0, 2.0, out=d)
    return d


@dataclass(frozen=True)
class DistanceSet:
    """A multiset of distances with its provenance.

    ``kind`` is "icd" (within one class) or "bcd" (one class against the
    pooled rest); ``label`` names the class when known.  The cardinality is
    fixed by construction: m*(m-1)/2 for ICD over m points, m*r for BCD.
    """

    values: NDArray[np.float64]
    kind: str
    label: int | None = None

    def __post_init__(self):
        if self.kind not in ("icd", "bcd"):
            raise ValueError("kind must be 'icd' or 'bcd'")
        vals = np.asarray(self.values, dtype=np.float64).ravel()
        if vals.size == 0:
            raise ValueError("distance set is empty")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0.0):
            raise ValueError("distances must be finite and non-negative")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def cardinality(self) -> int:
        return int(self.values.size)


def icd_set(
    points,
    metric: DistanceMetric | str = "euclidean",
    label: int | None = None,
    workers: int = 1,
) -> DistanceSet:
    """Intra-class distances: all m*(m-1)/2 pairwise distances in a class."""
    pts = _as_points(points)
    if pts.shape[0] < 2:
        raise DegenerateClass(
            "ICD needs at least 2 points in the class", label=label
        )
    values = pairwise_condensed(pts, metric, workers=workers)
    return DistanceSet(values=values, kind="icd", label=label)


def bcd_set(
    points_a,
    points_b,
    metric: DistanceMetric | str = "euclidean",
    label: int | None = None,
) -> DistanceSet:
    """Between-class distances: all m*r cross distances from a to b."""
    pa = _as_points(points_a, "points_a")
    pb = _as_points(points_b, "points_b")
    if pa.shape[0] < 1 or pb.shape[0] < 1:
        raise DegenerateClass("BCD needs at least 1 point on each side", label=label)
    values = pairwise_cross(pa, pb, metric).ravel()
    return DistanceSet(values=values, kind="bcd", label=label)


def fit_mahalanobis(points, ridge: float | None = None) -> DistanceMetric:
    """Fit a mahalanobis metric on pooled data (labels ignored).

    Estimates the sample covariance over all points, adds a ridge
    ``lambda * I`` (default ``1e-6 * trace(cov)/dim``, floored at 1e-12 for
    an all-zero covariance), and inverts.  Raises ``SingularCovariance``
    when the regularized matrix still is not positive definite, which
    happens when dimension outruns sample size by too much for the ridge
    to matter numerically.
    """
    from .dataset import Dataset  # late import; dataset depends on errors only

    if isinstance(points, Dataset):
        points = points.points
    pts = _as_points(points)
    n, dim = pts.shape
    if n < 2:
        raise DegenerateClass("covariance needs at least 2 points")
    cov = np.atleast_2d(np.cov(pts, rowvar=False, ddof=1))
    if ridge is None:
        ridge = 1e-6 * float(np.trace(cov)) / dim
        if ridge <= 0.0:
            ridge = 1e-12
    elif ridge < 0.0:
        raise ValueError("ridge must be non-negative")
    reg = cov + ridge * np.eye(dim)
    eigvals = np.linalg.eigvalsh(reg)
    floor = max(eigvals.max(), 0.0) * dim * np.finfo(np.float64).eps
    if eigvals.min() <= floor:
        raise SingularCovariance(
            "covariance is singular after regularization; increase ridge "
            f"(smallest eigenvalue {eigvals.min():.3e})"
        )
    inv = np.linalg.inv(reg)
    inv = (inv + inv.T) / 2.0
    return DistanceMetric(name="mahalanobis", inverse_covariance=inv)
