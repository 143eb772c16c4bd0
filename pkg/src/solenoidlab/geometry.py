"""Attractor point clouds, box-counting fits, and measure-density statistics.

Cloud representatives come from the disc-center anchor construction, so a
generation-n slice cloud approximates the attractor's stable section at
resolution (sup lam')**n.  Box counting uses an origin-anchored dyadic
grid; the scale window is auto-selected away from the too-few-boxes and
saturation regimes and never descends below the cloud's stated
resolution (for multi-fiber clouds that floor is the fiber spacing).
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coding import ENUMERATION_CAP, word_representatives
from .errors import CapExceededError, ResolutionError
from .maps import SolenoidSpec
from .numerics import TWO_PI
from .thermo import _phi_exponent, _weights_as_array, birkhoff_table


@dataclass(frozen=True)
class PointCloud:
    """A finite sample of the attractor (or of a slice/projection of it)."""

    dim: int
    points: np.ndarray
    provenance: dict
    resolution: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise ValueError("points must have shape (N, dim)")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]


@dataclass(frozen=True)
class DimensionFit:
    slope: float
    r2: float
    scale_lo: float
    scale_hi: float
    counts: dict

    def to_dict(self):
        return {"slope": self.slope, "r2": self.r2,
                "scale_lo": self.scale_lo, "scale_hi": self.scale_hi,
                "counts": {f"{r:.10g}": c for r, c in self.counts.items()}}


def slice_cloud(spec: SolenoidSpec, x: float, n: int,
                cap: int = ENUMERATION_CAP) -> PointCloud:
    """One representative (y, z) per generation-n backward word over fiber x."""
    if n < 0:
        raise ValueError("generation must be >= 0")
    if spec.d ** n > cap:
        raise CapExceededError(f"{spec.d}**{n} words exceed the cap {cap}")
    x = float(np.mod(x, TWO_PI))
    y, z = word_representatives(spec, np.array([x]), n)
    pts = np.column_stack([y[0], z[0]])
    return PointCloud(
        dim=2, points=pts,
        provenance={"spec_hash": spec.spec_hash(), "generation": n,
                    "fiber": x},
        resolution=spec.contraction_sup() ** n)


def attractor_cloud(spec: SolenoidSpec, n: int, fibers: int,
                    cap: int = ENUMERATION_CAP, threads: int = 1) -> PointCloud:
    """Union of slice clouds over equally spaced fibers, as 3D points."""
    if fibers <= 0:
        raise ValueError("fiber count must be positive; empty cloud requested")
    if fibers * spec.d ** n > cap:
        raise CapExceededError(
            f"{fibers} fibers x {spec.d}**{n} words exceed the cap {cap}")
    xs = TWO_PI * np.arange(fibers) / fibers

    def build(chunk):
        y, z = word_representatives(spec, chunk, n)
        xcol = np.repeat(chunk, y.shape[1])
        return np.column_stack([xcol, y.ravel(), z.ravel()])

    if threads > 1 and fibers > 1:
        chunks = np.array_split(xs, min(4 * threads, fibers))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(build, chunks))
        pts = np.concatenate(parts, axis=0)
    else:
        pts = build(xs)
    resolution = max(TWO_PI / fibers, spec.contraction_sup() ** n)
    return PointCloud(
        dim=3, points=pts,
        provenance={"spec_hash": spec.spec_hash(), "generation": n,
                    "fiber": "full"},
        resolution=resolution)


def project_cloud(cloud: PointCloud, cols) -> PointCloud:
    """Coordinate projection of a cloud (e.g. cols=(1,) for the y-axis)."""
    cols = tuple(cols)
    pts = cloud.points[:, cols]
    prov = dict(cloud.provenance)
    prov["projection"] = cols
    return PointCloud(dim=len(cols), points=pts, provenance=prov,
                      resolution=cloud.resolution)


def _box_count(points: np.ndarray, r: float, offset: float = 0.0) -> int:
    idx = np.floor((points - offset) / r).astype(np.int64)
    mins = idx.min(axis=0)
    idx -= mins
    spans = idx.max(axis=0).astype(np.int64) + 1
    key = idx[:, 0]
    for c in range(1, idx.shape[1]):
        key = key * spans[c] + idx[:, c]
    return int(np.unique(key).size)


def box_dimension(cloud: PointCloud, k_scales: int = 12,
                  offset_average: bool = False) -> DimensionFit:
    """Least-squares slope of log N(r) against log(1/r) over dyadic scales.

    Scales r = 2**-j are kept while 2 <= N(r) <= |cloud|/4 and r stays at
    or above the cloud resolution; of those, the finest k_scales enter the
    fit.  A cloud occupying a single box at every scale fits slope 0.
    """
    pts = cloud.points
    if len(cloud) < 100:
        raise ValueError("need at least 100 points for a box-dimension fit")
    if k_scales < 5:
        raise ValueError("need at least 5 scales")
    n_max = max(2.0, len(cloud) / 4.0)
    offsets = (0.0,) if not offset_average else (0.0, 0.25, 0.5, 0.75)

    counts = {}
    for j in range(0, 48):
        r = 2.0 ** (-j)
        if r < cloud.resolution * (1.0 - 1e-12):
            break
        vals = [_box_count(pts, r, off * r) for off in offsets]
        count = float(np.mean(vals))
        counts[r] = count
        if count > n_max:
            break

    valid = [(r, c) for r, c in counts.items() if 2.0 <= c <= n_max]
    if not valid:
        if counts and all(c <= 1.0 for c in counts.values()):
            # Everything in one box at every scale: dimension zero.
            used = dict(list(counts.items())[:max(5, len(counts))])
            rs = sorted(used)
            return DimensionFit(slope=0.0, r2=1.0, scale_lo=rs[0],
                                scale_hi=rs[-1], counts=used)
        raise ValueError("degenerate scale range: no usable dyadic scales")
    if len(valid) < 5:
        raise ValueError(
            f"degenerate scale range: only {len(valid)} usable scales")
    valid = sorted(valid)[:k_scales]  # finest scales first (smallest r)

    rs = np.array([r for r, _ in valid])
    ns = np.array([c for _, c in valid])
    xs = np.log(1.0 / rs)
    ys = np.log(ns)
    slope, intercept = np.polyfit(xs, ys, 1)
    fit = slope * xs + intercept
    ss_res = float(np.sum((ys - fit) ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return DimensionFit(slope=float(max(slope, 0.0)), r2=float(r2),
                        scale_lo=float(rs.min()), scale_hi=float(rs.max()),
                        counts={float(r): float(c) for r, c in valid})


# ---------------------------------------------------------------------------
# Local measure density
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityReport:
    """Statistics of mu(B(p, r)) / r**t0 over weighted sample points."""

    radii: tuple
    t0_mid: float
    ratio_min: tuple
    ratio_median: tuple
    ratio_max: tuple
    frac_bounded: float
    frac_growing: float
    samples: int
    ratios: np.ndarray

    def to_dict(self):
        return {"radii": list(self.radii), "t0_mid": self.t0_mid,
                "ratio_min": list(self.ratio_min),
                "ratio_median": list(self.ratio_median),
                "ratio_max": list(self.ratio_max),
                "frac_bounded": self.frac_bounded,
                "frac_growing": self.frac_growing,
                "samples": self.samples}


def ball_mass(reps: np.ndarray, weights: np.ndarray, center: np.ndarray,
              radius: float) -> float:
    """Total weight of representatives inside the closed ball."""
    d2 = np.sum((reps - center) ** 2, axis=1)
    return float(weights[d2 <= radius * radius].sum())


def local_density_stats(spec: SolenoidSpec, weights, x: float, n: int,
                        radii, samples: int = 200, seed: int = 0,
                        bound_factor: float = 16.0,
                        growth_factor: float = 2.0) -> DensityReport:
    """Density ratios of the cylinder-weight measure on a stable slice.

    Sample points are drawn with the cylinder weights (fixed seed); for
    each the measure of the ball of every radius is divided by r**t0.
    frac_bounded is the fraction of points whose ratio stays within
    bound_factor across the radii; frac_growing the fraction whose ratio
    at the finest radius exceeds growth_factor times the coarsest one
    (density blow-up, the overlap signature).
    """
    radii = tuple(float(r) for r in radii)
    if not radii:
        raise ValueError("need at least one radius")
    resolution = spec.contraction_sup() ** n
    below = [r for r in radii if r < resolution]
    if below:
        raise ResolutionError(
            f"radii {below} lie below the generation resolution {resolution:g}")
    warr = _weights_as_array(spec, weights, n)
    cloud = slice_cloud(spec, x, n)
    reps = cloud.points
    t0 = _phi_exponent(spec, n)
    rng = np.random.default_rng(seed)
    picks = rng.choice(warr.size, size=samples, replace=True, p=warr)

    ratios = np.empty((samples, len(radii)))
    for i, idx in enumerate(picks):
        center = reps[idx]
        d2 = np.sum((reps - center) ** 2, axis=1)
        for k, r in enumerate(radii):
            ratios[i, k] = warr[d2 <= r * r].sum() / r ** t0

    finest = int(np.argmin(radii))
    coarsest = int(np.argmax(radii))
    spread = ratios.max(axis=1) / ratios.min(axis=1)
    growing = ratios[:, finest] > growth_factor * ratios[:, coarsest]
    return DensityReport(
        radii=radii, t0_mid=float(t0),
        ratio_min=tuple(ratios.min(axis=0)),
        ratio_median=tuple(np.median(ratios, axis=0)),
        ratio_max=tuple(ratios.max(axis=0)),
        frac_bounded=float(np.mean(spread <= bound_factor)),
        frac_growing=float(np.mean(growing)),
        samples=samples, ratios=ratios)


# ---------------------------------------------------------------------------
# Overlap multiplicity of projected tubes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OverlapReport:
    """Counts of y-projection overlaps between generation-n tubes."""

    n: int
    x_samples: int
    half_width_factor: float
    max_order: int
    order_histogram: dict
    max_touch_count: int
    h_n: float

    def to_dict(self):
        return {"n": self.n, "x_samples": self.x_samples,
                "half_width_factor": self.half_width_factor,
                "max_order": self.max_order,
                "order_histogram": {str(k): v for k, v in
                                    sorted(self.order_histogram.items())},
                "max_touch_count": self.max_touch_count, "h_n": self.h_n}


def _interval_overlap_pairs(lo: np.ndarray, hi: np.ndarray):
    """All pairs (i < j) of overlapping intervals, by a sweep over lo."""
    order = np.argsort(lo, kind="stable")
    active = []  # heap of (hi, index)
    pairs = []
    for idx in order:
        l = lo[idx]
        while active and active[0][0] < l:
            heapq.heappop(active)
        for _, other in active:
            pairs.append((min(idx, other), max(idx, other)))
        heapq.heappush(active, (hi[idx], idx))
    return pairs


def overlap_multiplicity(spec: SolenoidSpec, n: int, x_samples: int,
                         half_width_factor: float = 1.0,
                         cap: int = ENUMERATION_CAP) -> OverlapReport:
    """Count tube overlaps in the y-projection across sampled fibers.

    Every generation-n word projects, on each sampled fiber, to the
    interval around its representative's y with the rigorous half-width
    C * exp(sup-sum of log lam'), so overlaps are over- rather than
    under-counted.  A pair counts toward the full-overlap order when it
    touches on every sampled fiber (any symbols: fully overlapping pairs
    necessarily share their recent itinerary, which is what pins both
    tubes to a planar crossing).  Per-fiber touches between cylinders
    with different leading symbol feed the contact counts behind the
    growth exponent h_n = log(max contacts)/n.
    """
    if x_samples < 1:
        raise ValueError("need at least one sampled fiber")
    count = spec.d ** n
    if count * x_samples > cap:
        raise CapExceededError("fiber sample times words exceeds the cap")
    table = birkhoff_table(spec, n, cap)
    half = half_width_factor * np.exp(table.lam_sup)
    xs = TWO_PI * np.arange(x_samples) / x_samples
    y, _ = word_representatives(spec, xs, n)
    leading = np.arange(count) % spec.d  # most recent symbol

    pair_counts = {}
    partners = [set() for _ in range(count)]
    for f in range(x_samples):
        lo = y[f] - half
        hi = y[f] + half
        for i, j in _interval_overlap_pairs(lo, hi):
            pair_counts[(i, j)] = pair_counts.get((i, j), 0) + 1
            if leading[i] != leading[j]:
                partners[i].add(j)
                partners[j].add(i)

    full_order = np.zeros(count, dtype=int)
    for (i, j), c in pair_counts.items():
        if c == x_samples:
            full_order[i] += 1
            full_order[j] += 1
    hist = {}
    for order in full_order:
        hist[int(order)] = hist.get(int(order), 0) + 1
    max_touch = max((len(s) for s in partners), default=0)
    h_n = math.log(max(max_touch, 1)) / n
    return OverlapReport(
        n=n, x_samples=x_samples, half_width_factor=half_width_factor,
        max_order=int(full_order.max()), order_histogram=hist,
        max_touch_count=int(max_touch), h_n=float(h_n))
