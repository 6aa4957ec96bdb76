"""Classical data-complexity measures for labeled datasets.

All eight measures map a dataset to [0, 1], oriented so that larger means
harder (more class overlap):

F1        1 / (1 + max_f r_f) where r_f is feature f's ratio of
          between-class to within-class scatter
N1        fraction of points incident to a class-crossing edge of the
          euclidean minimum spanning tree
N2        r / (1 + r) where r is the sum of nearest same-class distances
          over the sum of nearest other-class distances
N3        leave-one-out 1-NN error rate
N4        1-NN error on synthetic points interpolated between same-class
          pairs, classified against the original data
T1        fraction of hyperspheres that survive absorption (a sphere grows
          until it would touch another class; spheres fully contained in a
          retained sphere are absorbed)
LSC       1 - (mean local-set size)/n, the local set of x being all
          same-class points strictly closer than x's nearest enemy
Density   1 - fraction of same-class pairs closer than the 0.15 quantile
          of all pairwise distances

Distances are euclidean throughout.  N1 breaks distance ties by the
lexicographic order of the endpoint index pair, making the spanning tree
(and N1 itself) deterministic; N3 breaks nearest-neighbor ties by the
lower row index, and coincident points with different labels always count
as errors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.distance import cdist, squareform

from .dataset import Dataset, partition
from .distances import pairwise_condensed
from .errors import DegenerateClass

__all__ = [
    "MEASURE_CODES",
    "MeasureResult",
    "compute_measures",
    "f1",
    "n1",
    "n2",
    "n3",
    "n4",
    "t1",
    "lsc",
    "density",
]

MEASURE_CODES = ("F1", "N1", "N2", "N3", "N4", "T1", "LSC", "Density")

DENSITY_QUANTILE = 0.15


@dataclass(frozen=True)
class MeasureResult:
    """A complexity measure's value with its parameters."""

    code: str
    value: float
    params: dict

    def __post_init__(self):
        if self.code not in MEASURE_CODES:
            raise ValueError(f"unknown measure code {self.code!r}")
        v = float(self.value)
        if not np.isfinite(v) or not 0.0 <= v <= 1.0:
            raise ValueError(f"{self.code} value {v!r} outside [0, 1]")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "params", dict(self.params))


def _validate(ds: Dataset, need_class_pairs: bool = False):
    part = partition(ds)  # raises on < 2 classes
    if need_class_pairs:
        for label, idx in part.groups.items():
            if idx.size < 2:
                raise DegenerateClass(
                    f"class {label} has {idx.size} point(s); need at least 2",
                    label=label,
                )
    return part


def _square_distances(ds: Dataset, workers: int = 1) -> NDArray[np.float64]:
    return squareform(pairwise_condensed(ds.points, "euclidean", workers=workers))


def _nearest_enemy_distance(
    D: NDArray[np.float64], labels: NDArray[np.int64]
) -> NDArray[np.float64]:
    cross = labels[:, None] != labels[None, :]
    return np.where(cross, D, np.inf).min(axis=1)


def f1(ds: Dataset) -> MeasureResult:
    """Maximum Fisher discriminant ratio, inverted onto [0, 1].

    r_f = sum_c n_c (mu_cf - mu_f)^2 / sum_c sum_{x in c} (x_f - mu_cf)^2;
    F1 = 1 / (1 + max_f r_f).  A feature that separates the classes
    perfectly has infinite ratio and F1 = 0; no feature discriminating at
    all gives F1 = 1.
    """
    part = _validate(ds)
    X = ds.points
    mu = X.mean(axis=0)
    between = np.zeros(ds.dim)
    within = np.zeros(ds.dim)
    for idx in part.groups.values():
        block = X[idx]
        mu_c = block.mean(axis=0)
        between += idx.size * (mu_c - mu) ** 2
        within += ((block - mu_c) ** 2).sum(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(
            within > 0.0, between / within, np.where(between > 0.0, np.inf, 0.0)
        )
    value = float(1.0 / (1.0 + ratio.max()))
    return MeasureResult(code="F1", value=value, params={})


def _mst_edges(n: int, condensed: NDArray[np.float64]) -> list[tuple[int, int]]:
    """Kruskal over all pairs, ties broken by (i, j) lexicographic order.

    The tie rule pins down a unique spanning tree for any input, so N1
    does not depend on library internals or memory layout.
    """
    ii, jj = np.triu_indices(n, k=1)
    order = np.lexsort((jj, ii, condensed))
    src = ii[order].tolist()
    dst = jj[order].tolist()

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges: list[tuple[int, int]] = []
    for i, j in zip(src, dst):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
            if len(edges) == n - 1:
                break
    return edges


def n1(ds: Dataset, workers: int = 1) -> MeasureResult:
    """Fraction of points touching a class-crossing MST edge."""
    _validate(ds)
    condensed = pairwise_condensed(ds.points, "euclidean", workers=workers)
    labels = ds.labels
    boundary: set[int] = set()
    for i, j in _mst_edges(ds.n, condensed):
        if labels[i] != labels[j]:
            boundary.add(i)
            boundary.add(j)
    return MeasureResult(code="N1", value=len(boundary) / ds.n, params={})


def n2(ds: Dataset, workers: int = 1) -> MeasureResult:
    """Ratio of intra-class to inter-class nearest-neighbor distances.

    r = sum_i d(x_i, nearest same class) / sum_i d(x_i, nearest other
    class); N2 = r / (1 + r).  Compact, well-separated classes give small
    values.
    """
    _validate(ds, need_class_pairs=True)
    D = _square_distances(ds, workers)
    labels = ds.labels
    same = labels[:, None] == labels[None, :]
    np.fill_diagonal(same, False)
    d_same = np.where(same, D, np.inf).min(axis=1)
    d_other = _nearest_enemy_distance(D, labels)
    intra = float(d_same.sum())
    inter = float(d_other.sum())
    if inter == 0.0:
        # every point coincides with an enemy; maximal overlap unless the
        # intra distances all vanish too (r is 0/0, taken as 0)
        value = 1.0 if intra > 0.0 else 0.0
    else:
        r = intra / inter
        value = r / (1.0 + r)
    return MeasureResult(code="N2", value=value, params={})


def n3(ds: Dataset, workers: int = 1) -> MeasureResult:
    """Leave-one-out 1-NN error rate.

    Nearest-neighbor ties go to the lower row index; a point coinciding
    with a different-label point is always an error (the tie is
    irresolvable in feature space).
    """
    _validate(ds)
    D = _square_distances(ds, workers)
    labels = ds.labels
    np.fill_diagonal(D, np.inf)
    nn = D.argmin(axis=1)  # argmin takes the first minimum: lower index
    errors = labels[nn] != labels
    coincident_enemy = ((D == 0.0) & (labels[:, None] != labels[None, :])).any(axis=1)
    value = float(np.mean(errors | coincident_enemy))
    return MeasureResult(code="N3", value=value, params={})


def n4(
    ds: Dataset,
    n_synthetic: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> MeasureResult:
    """1-NN error on same-class interpolants.

    Draws ``n_synthetic`` points (default: n), each uniform on the segment
    between two distinct points of a random class, labels it with that
    class, and classifies it by 1-NN against the original data.  Separable
    classes with convex regions give errors near 0.
    """
    part = _validate(ds, need_class_pairs=True)
    n_syn = ds.n if n_synthetic is None else int(n_synthetic)
    if n_syn < 1:
        raise ValueError(f"n_synthetic must be >= 1, got {n_syn}")
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))
    class_labels = sorted(part.groups)
    X = ds.points
    synth = np.empty((n_syn, ds.dim))
    synth_labels = np.empty(n_syn, dtype=np.int64)
    for k in range(n_syn):
        c = class_labels[int(rng.integers(len(class_labels)))]
        members = part.groups[c]
        a, b = rng.choice(members, size=2, replace=False)
        t = rng.random()
        synth[k] = X[a] + t * (X[b] - X[a])
        synth_labels[k] = c
    nn = cdist(synth, X).argmin(axis=1)
    value = float(np.mean(ds.labels[nn] != synth_labels))
    return MeasureResult(
        code="N4", value=value, params={"n_synthetic": n_syn, "seed": seed}
    )


def _touching_radii(
    D: NDArray[np.float64], labels: NDArray[np.int64]
) -> NDArray[np.float64]:
    """Per-point sphere radii that stop at the opposing class.

    Mutual nearest enemies split their gap (r = d/2); otherwise a point's
    sphere extends to its nearest enemy minus that enemy's own radius, so
    spheres of opposing classes touch instead of overlapping.  Resolution
    follows the nearest-enemy chain, which has strictly decreasing enemy
    distances except on ties, where the gap is split as in the mutual
    case.
    """
    cross = labels[:, None] != labels[None, :]
    Dx = np.where(cross, D, np.inf)
    enemy = Dx.argmin(axis=1)
    d_enemy = Dx.min(axis=1)
    n = len(labels)
    radii = np.full(n, -1.0)
    for start in range(n):
        if radii[start] >= 0.0:
            continue
        chain = [start]
        seen = {start}
        while True:
            i = chain[-1]
            j = int(enemy[i])
            if radii[j] >= 0.0:
                break
            if int(enemy[j]) == i or j in seen:  # mutual pair or tie cycle
                radii[j] = d_enemy[j] / 2.0
                break
            chain.append(j)
            seen.add(j)
        for i in reversed(chain):
            if radii[i] < 0.0:
                radii[i] = d_enemy[i] - radii[int(enemy[i])]
    return radii


def t1(ds: Dataset, workers: int = 1) -> MeasureResult:
    """Fraction of hyperspheres retained after absorbing redundant ones.

    Each point gets a sphere with the touching radius (see
    ``_touching_radii``); a sphere whose covered points (d <= r) are a
    subset of another sphere's coverage is absorbed, ties going to the
    lower index.  Compact single-region classes collapse to a few spheres;
    interleaved classes keep almost one sphere per point.
    """
    _validate(ds)
    D = _square_distances(ds, workers)
    r = _touching_radii(D, ds.labels)
    n = ds.n
    cover = (D <= r[:, None]).astype(np.float32)
    # uncovered[i, j] = how many points sphere i covers that j does not
    uncovered = cover @ (1.0 - cover.T)
    subset = uncovered < 0.5
    np.fill_diagonal(subset, False)
    size = cover.sum(axis=1)
    proper = subset & (size[:, None] < size[None, :])
    equal_cover = subset & subset.T
    lower = np.arange(n)[None, :] < np.arange(n)[:, None]
    absorbed = (proper | (equal_cover & lower)).any(axis=1)
    value = float(np.mean(~absorbed))
    return MeasureResult(code="T1", value=value, params={})


def lsc(ds: Dataset, workers: int = 1) -> MeasureResult:
    """Local-set average cardinality, inverted onto [0, 1).

    The local set of x is every same-class point strictly closer to x than
    x's nearest enemy, x itself included; LSC = 1 - sum |LS| / n^2.  Large
    local sets (close to the whole class) mean simple structure.
    """
    _validate(ds)
    D = _square_distances(ds, workers)
    labels = ds.labels
    ne = _nearest_enemy_distance(D, labels)
    same = labels[:, None] == labels[None, :]
    counts = (same & (D < ne[:, None])).sum(axis=1)  # diagonal counts x itself
    value = float(1.0 - counts.sum() / (ds.n**2))
    return MeasureResult(code="LSC", value=value, params={})


def density(
    ds: Dataset, quantile: float = DENSITY_QUANTILE, workers: int = 1
) -> MeasureResult:
    """Sparseness of the same-class epsilon-neighborhood graph.

    Connect every pair closer than or equal to the ``quantile`` cut of all
    pairwise distances, delete class-crossing edges, and report
    1 - 2|E| / (n (n-1)).  Dense within-class neighborhoods give low
    values.  Unlike the other measures this one is defined for a single
    class too (the graph simply keeps all its edges).
    """
    if ds.n < 2:
        raise DegenerateClass("density needs at least 2 points")
    if not 0.0 < quantile < 1.0:
        raise ValueError(f"quantile must be in (0, 1), got {quantile}")
    condensed = pairwise_condensed(ds.points, "euclidean", workers=workers)
    cut = np.quantile(condensed, quantile)
    ii, jj = np.triu_indices(ds.n, k=1)
    same = ds.labels[ii] == ds.labels[jj]
    edges = int(np.count_nonzero(same & (condensed <= cut)))
    value = 1.0 - edges / condensed.size
    return MeasureResult(code="Density", value=value, params={"quantile": quantile})


def compute_measures(
    ds: Dataset,
    codes=None,
    n4_synthetic: int | None = None,
    seed: int = 0,
    density_quantile: float = DENSITY_QUANTILE,
    workers: int = 1,
) -> list[MeasureResult]:
    """Compute several measures in the order given (default: all eight)."""
    wanted = list(MEASURE_CODES) if codes is None else list(codes)
    unknown = [c for c in wanted if c not in MEASURE_CODES]
    if unknown:
        raise ValueError(
            f"unknown measure codes {unknown}; expected some of {', '.join(MEASURE_CODES)}"
        )
    fns = {
        "F1": lambda: f1(ds),
        "N1": lambda: n1(ds, workers=workers),
        "N2": lambda: n2(ds, workers=workers),
        "N3": lambda: n3(ds, workers=workers),
        "N4": lambda: n4(ds, n_synthetic=n4_synthetic, seed=seed, workers=workers),
        "T1": lambda: t1(ds, workers=workers),
        "LSC": lambda: lsc(ds, workers=workers),
        "Density": lambda: density(ds, quantile=density_quantile, workers=workers),
    }
    return [fns[c]() for c in wanted]
