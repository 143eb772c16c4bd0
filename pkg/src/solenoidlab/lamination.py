"""Unstable leaves, their planar crossings, holonomy, and regularity tests.

A leaf is the continuation of a backward word across base lifts: the
inverse-branch chain is evaluated on the real line, so leaves are defined
on extended windows [-margin, 2*pi + margin] and across the seam.  The
crossing set of projected leaves from different generation-one tubes (the
pool built by ``build_gamma_pool``) drives both the transversality
estimate and the strong-Lipschitz margin test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coding import Word, leaf_states
from .errors import WordTooShortError
from .maps import Point3, SolenoidSpec
from .numerics import TWO_PI
from .thermo import gibbs_weight_array, _phi_exponent

SLOPE_STEP = 1e-5          # central-difference step along the lift
NEAR_TANGENCY_SLOPE = 1e-6  # |slope difference| below this is a tangency
TOUCH_TOL = 1e-9            # |y_a - y_b| below this counts as contact


@dataclass(frozen=True)
class UnstableLeaf:
    """Sampled graph of a leaf x -> (y(x), z(x)) over an extended window."""

    spec: SolenoidSpec
    past: Word
    margin: float
    samples: np.ndarray  # (k, 3) rows (x_lift, y, z), lifts increasing
    error_bound: float

    @property
    def lifts(self):
        return self.samples[:, 0]

    @property
    def y(self):
        return self.samples[:, 1]


@dataclass(frozen=True)
class IntersectionRecord:
    """A crossing of two projected leaves with distinct leading symbols."""

    x_lift: float
    y: float
    angle: float
    past_a: Word
    past_b: Word
    near_tangency: bool = False

    def to_dict(self):
        return {"x_lift": self.x_lift, "y": self.y, "angle": self.angle,
                "past_a": str(self.past_a), "past_b": str(self.past_b),
                "near_tangency": self.near_tangency}


@dataclass(frozen=True)
class StrongLipschitzResult:
    is_strong: bool | None
    worst_margin: float
    indeterminate: bool = False


@dataclass(frozen=True)
class HolonomyReport:
    x_src: float
    x_dst: float
    scale_stats: dict         # dyadic scale exponent -> ratio stats
    strong_lipschitz_fraction: float
    flagged_words: list
    flagged_weight: float

    def to_dict(self):
        return {
            "x_src": self.x_src, "x_dst": self.x_dst,
            "scale_stats": {str(k): v for k, v in
                            sorted(self.scale_stats.items())},
            "strong_lipschitz_fraction": self.strong_lipschitz_fraction,
            "flagged_words": [str(w) for w in self.flagged_words],
            "flagged_weight": self.flagged_weight,
        }


def _require_depth(spec, past, tol):
    bound = spec.contraction_sup() ** past.generation
    if bound >= tol:
        raise WordTooShortError(
            f"past of length {past.generation} gives error {bound:g} >= {tol:g}")
    return bound


def leaf_point(spec: SolenoidSpec, past: Word, lift: float) -> Point3:
    """Leaf representative over one base lift (no tolerance gate)."""
    y, z = leaf_states(spec, np.array([past.symbols], dtype=int),
                       np.array([float(lift)]))
    return Point3(x=float(np.mod(lift, TWO_PI)), y=float(y[0, 0]),
                  z=float(z[0, 0]))


def unstable_leaf(spec: SolenoidSpec, past: Word, margin: float,
                  samples: int, tol: float = 1e-9) -> UnstableLeaf:
    """Sample a leaf on an increasing lift grid over [-margin, 2*pi+margin]."""
    if samples < 2:
        raise ValueError("need at least two samples")
    bound = _require_depth(spec, past, tol)
    lifts = np.linspace(-margin, TWO_PI + margin, samples)
    y, z = leaf_states(spec, np.array([past.symbols], dtype=int), lifts)
    rows = np.column_stack([lifts, y[0], z[0]])
    return UnstableLeaf(spec=spec, past=past, margin=float(margin),
                        samples=rows, error_bound=float(bound))


def _leaf_y(spec, symbols, lifts):
    y, _ = leaf_states(spec, np.asarray([symbols], dtype=int),
                       np.asarray(lifts, dtype=float))
    return y[0]


def _refine_crossing(spec, sym_a, sym_b, lo, hi, tol=1e-10):
    def gap(x):
        return float(_leaf_y(spec, sym_a, [x])[0] - _leaf_y(spec, sym_b, [x])[0])

    g_lo = gap(lo)
    for _ in range(64):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        g_mid = gap(mid)
        if (g_mid > 0.0) == (g_lo > 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _slopes_at(spec, sym_a, sym_b, x):
    pts = np.array([x - SLOPE_STEP, x + SLOPE_STEP])
    ya = _leaf_y(spec, sym_a, pts)
    yb = _leaf_y(spec, sym_b, pts)
    sa = (ya[1] - ya[0]) / (2.0 * SLOPE_STEP)
    sb = (yb[1] - yb[0]) / (2.0 * SLOPE_STEP)
    return float(sa), float(sb)


def leaf_intersections(leaf_a: UnstableLeaf, leaf_b: UnstableLeaf) -> list:
    """Crossings of the projected leaves over their common lift range.

    Sign changes of y_a - y_b are refined by bisection; contact runs where
    the curves stay within TOUCH_TOL (coincident or tangent graphs, no
    sign change) are reported as near-tangency records.
    """
    if leaf_a.past.most_recent == leaf_b.past.most_recent:
        raise ValueError("leaves must come from distinct leading symbols")
    spec = leaf_a.spec
    lo = max(leaf_a.lifts[0], leaf_b.lifts[0])
    hi = min(leaf_a.lifts[-1], leaf_b.lifts[-1])
    if hi <= lo:
        return []
    grid = np.unique(np.concatenate([
        leaf_a.lifts[(leaf_a.lifts >= lo) & (leaf_a.lifts <= hi)],
        leaf_b.lifts[(leaf_b.lifts >= lo) & (leaf_b.lifts <= hi)],
        [lo, hi]]))
    sym_a, sym_b = leaf_a.past.symbols, leaf_b.past.symbols
    g = _leaf_y(spec, sym_a, grid) - _leaf_y(spec, sym_b, grid)

    records = []
    touching = np.abs(g) < TOUCH_TOL
    # contact runs: a grid point sitting on the crossing, a tangency, or a
    # coincidence stretch; the slope gap decides which.
    k = 0
    while k < len(grid):
        if touching[k]:
            start = k
            while k < len(grid) and touching[k]:
                k += 1
            mid = grid[(start + k - 1) // 2]
            sa, sb = _slopes_at(spec, sym_a, sym_b, mid)
            diff = abs(sa - sb)
            records.append(IntersectionRecord(
                x_lift=float(mid),
                y=float(_leaf_y(spec, sym_a, [mid])[0]),
                angle=float(math.atan(diff)),
                past_a=leaf_a.past, past_b=leaf_b.past,
                near_tangency=bool(diff < NEAR_TANGENCY_SLOPE)))
        else:
            k += 1

    sign = np.sign(g)
    for k in range(len(grid) - 1):
        if touching[k] or touching[k + 1]:
            continue
        if sign[k] * sign[k + 1] < 0.0:
            x_star = _refine_crossing(spec, sym_a, sym_b,
                                      float(grid[k]), float(grid[k + 1]))
            sa, sb = _slopes_at(spec, sym_a, sym_b, x_star)
            diff = abs(sa - sb)
            records.append(IntersectionRecord(
                x_lift=float(x_star),
                y=float(_leaf_y(spec, sym_a, [x_star])[0]),
                angle=float(math.atan(diff)),
                past_a=leaf_a.past, past_b=leaf_b.past,
                near_tangency=bool(diff < NEAR_TANGENCY_SLOPE)))
    records.sort(key=lambda r: r.x_lift)
    return records


# ---------------------------------------------------------------------------
# Transversality estimate
# ---------------------------------------------------------------------------

def _sample_words(spec, n, count, rng, weights=None):
    if weights is None:
        weights = gibbs_weight_array(spec, _phi_exponent(spec, n), n)
    idx = rng.choice(weights.size, size=count, replace=True, p=weights)
    return idx, weights


def min_transversal_angle(spec: SolenoidSpec, n_past: int, pair_budget: int,
                          seed: int = 0, samples: int = 257,
                          margin: float = 0.2):
    """Minimum crossing angle over a weighted sample of leaf pairs.

    Pairs are drawn with the cylinder weights, conditioned on distinct
    leading symbols; returns (alpha0_est, near_tangency_count).  A
    positive estimate with a zero tangency count is the transversality
    verdict at this resolution.
    """
    if pair_budget < 1:
        raise ValueError("pair budget must be >= 1")
    rng = np.random.default_rng(seed)
    idx_a, weights = _sample_words(spec, n_past, pair_budget, rng)
    idx_b, _ = _sample_words(spec, n_past, pair_budget, rng, weights)
    # force distinct leading symbols by resampling the partner's last digit
    lead_a = idx_a % spec.d
    lead_b = idx_b % spec.d
    shift = 1 + rng.integers(0, spec.d - 1, size=pair_budget)
    clash = lead_b == lead_a
    idx_b = np.where(clash, idx_b - lead_b + (lead_b + shift) % spec.d, idx_b)

    leaf_cache = {}

    def leaf_of(i):
        if i not in leaf_cache:
            word = Word.from_index(int(i), spec.d, n_past)
            leaf_cache[i] = unstable_leaf(
                spec, word, margin, samples,
                tol=spec.contraction_sup() ** n_past * 1.0001 + 1e-300)
        return leaf_cache[i]

    alpha = math.inf
    tangencies = 0
    found = False
    for ia, ib in zip(idx_a, idx_b):
        if ia == ib:
            continue
        for rec in leaf_intersections(leaf_of(ia), leaf_of(ib)):
            if rec.near_tangency:
                tangencies += 1
            else:
                found = True
                alpha = min(alpha, rec.angle)
    return (alpha if found else 0.0), tangencies


# ---------------------------------------------------------------------------
# Holonomy
# ---------------------------------------------------------------------------

def holonomy_map(spec: SolenoidSpec, past: Word, x_src: float, x_dst: float,
                 tol: float = 1e-9):
    """Slide along one leaf: the points over x_src and x_dst as a pair.

    x_dst is interpreted as a lift relative to the x_src window, so paths
    longer than one turn stay on the same leaf continuation.
    """
    _require_depth(spec, past, tol)
    p = leaf_point(spec, past, x_src)
    q = leaf_point(spec, past, x_dst)
    return p, q


@dataclass(frozen=True)
class GammaPool:
    """Weighted sample of leaves evaluated on a shared lift grid.

    The pool is built once per run and shared read-only; the margin test
    intersects a target leaf against the pool curves, so every distance
    query amounts to a sign scan plus a local bisection refinement.
    """

    spec: SolenoidSpec
    n_past: int
    margin: float
    grid: np.ndarray          # shared lifts (k,)
    digits: np.ndarray        # (b, n_past) pool pasts, deepest first
    leading: np.ndarray       # (b,) most recent symbols
    y_curves: np.ndarray      # (b, k)
    records: list             # crossings among the pool leaves

    @property
    def size(self):
        return self.digits.shape[0]


def build_gamma_pool(spec: SolenoidSpec, n_past: int, budget: int,
                     seed: int = 0, margin: float = 0.5,
                     samples: int = 257) -> GammaPool:
    """Draw weighted pasts and precompute their leaves over the window."""
    rng = np.random.default_rng(seed)
    idx, _ = _sample_words(spec, n_past, budget, rng)
    idx = sorted(set(int(i) for i in idx))
    digits = np.array([Word.from_index(i, spec.d, n_past).symbols
                       for i in idx], dtype=int)
    grid = np.linspace(-margin, TWO_PI + margin, samples)
    y, _ = leaf_states(spec, digits, grid)
    leading = digits[:, -1]
    records = []
    tol = spec.contraction_sup() ** n_past * 1.0001 + 1e-300
    leaves = [unstable_leaf(spec, Word.from_index(i, spec.d, n_past),
                            margin, samples, tol=tol) for i in idx]
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if leading[a] == leading[b]:
                continue
            records.extend(leaf_intersections(leaves[a], leaves[b]))
    return GammaPool(spec=spec, n_past=n_past, margin=margin, grid=grid,
                     digits=digits, leading=leading, y_curves=y,
                     records=records)


def _nearest_crossing(spec, target_syms, pool: GammaPool, lead: int,
                      x_ref: float) -> float:
    """Distance from x_ref to the nearest pool crossing on the target leaf."""
    mask = pool.leading != lead
    if not mask.any():
        return math.nan
    y_target = _leaf_y(spec, target_syms, pool.grid)
    diffs = y_target[None, :] - pool.y_curves[mask]
    signs = np.sign(diffs)
    change = signs[:, :-1] * signs[:, 1:] < 0.0
    rows, cols = np.nonzero(change)
    if rows.size == 0:
        return math.inf
    mids = 0.5 * (pool.grid[cols] + pool.grid[cols + 1])
    order = np.argsort(np.abs(mids - x_ref))[:4]
    pool_digits = pool.digits[mask]

    # synchronized bisection over the candidate cells
    los = pool.grid[cols[order]].astype(float)
    his = pool.grid[cols[order] + 1].astype(float)
    rows_sel = rows[order]
    tdig = np.asarray([target_syms], dtype=int)
    pdig = pool_digits[rows_sel]

    def gap(xs):
        yt, _ = leaf_states(spec, tdig, xs)
        yp, _ = leaf_states(spec, pdig, xs)
        return yt[0] - np.diagonal(yp)

    g_lo = gap(los)
    for _ in range(48):
        if np.max(his - los) <= 1e-10:
            break
        mids = 0.5 * (los + his)
        g_mid = gap(mids)
        same = (g_mid > 0.0) == (g_lo > 0.0)
        los = np.where(same, mids, los)
        g_lo = np.where(same, g_mid, g_lo)
        his = np.where(same, his, mids)
    return float(np.min(np.abs(0.5 * (los + his) - x_ref)))


def strong_lipschitz_test(spec: SolenoidSpec, past: Word, n_max: int,
                          L: float, pool: GammaPool, x: float = 0.0,
                          n_min: int = 1) -> StrongLipschitzResult:
    """Backward-orbit margin of a word against the crossing pool.

    For each depth n in [n_min, n_max] the word is shifted back n steps;
    the base position of the shifted point is compared with the crossings
    of its remaining leaf against pool leaves from other generation-one
    tubes.  The x-distance must stay above L / eta_n with eta_n the base
    expansion along the dropped steps; returned is the worst ratio
    min_n dist * eta_n / L (so the pool window, not L, bounds the search
    and the ratio is exactly linear in 1/L).  +inf means no crossing at
    all near the orbit; an unusable pool yields the indeterminate flag.
    """
    if past.generation <= n_max:
        raise WordTooShortError("past must be longer than the test depth")
    if pool is None or pool.size == 0:
        return StrongLipschitzResult(is_strong=None, worst_margin=math.nan,
                                     indeterminate=True)
    chain = [float(np.mod(x, TWO_PI))]
    for s in reversed(past.symbols):
        chain.append(float(spec.eta_inverse_lift(chain[-1] + TWO_PI * s)))

    worst = math.inf
    usable = False
    for n in range(n_min, n_max + 1):
        truncated = past.symbols[:-n]
        x_shift = chain[n]
        eta_n = float(np.prod(spec.eta_prime(np.array(chain[1:n + 1]))))
        dist = _nearest_crossing(spec, truncated, pool, truncated[-1], x_shift)
        if math.isnan(dist):
            continue
        usable = True
        if math.isfinite(dist):
            worst = min(worst, dist * eta_n / L)
    if not usable:
        return StrongLipschitzResult(is_strong=None, worst_margin=math.nan,
                                     indeterminate=True)
    return StrongLipschitzResult(is_strong=bool(worst >= 1.0),
                                 worst_margin=float(worst))


def holonomy_lipschitz_scan(spec: SolenoidSpec, x_src: float, x_dst: float,
                            n: int, pairs: int, seed: int = 0,
                            L: float = 0.5, pool: GammaPool | None = None,
                            gamma_budget: int = 24,
                            gamma_depth: int = 10) -> HolonomyReport:
    """Ratio statistics of the holonomy between two fibers.

    Samples weighted word pairs in the source fiber stratified across
    dyadic separation scales (partners share a growing number of recent
    symbols), slides both along their leaves to the destination fiber,
    and buckets dist(q, q')/dist(p, p') by the dyadic scale of the source
    separation.  Each sampled word is also run through the
    strong-Lipschitz margin test at depth n//2; the failing words are the
    flagged set, whose sampled weight estimates the Gibbs mass of the
    weak non-Lipschitz part at this generation.
    """
    rng = np.random.default_rng(seed)
    if pool is None:
        pool = build_gamma_pool(spec, gamma_depth, gamma_budget, seed=seed + 1)
    weights = gibbs_weight_array(spec, _phi_exponent(spec, n), n)
    idx_a = rng.choice(weights.size, size=pairs, replace=True, p=weights)
    share = rng.integers(0, n, size=pairs)  # shared recent depth
    d = spec.d

    digits_cache = {}

    def rep_pair(i, j):
        key = (int(i), int(j))
        if key not in digits_cache:
            wa = Word.from_index(int(i), d, n)
            wb = Word.from_index(int(j), d, n)
            ya, za = leaf_states(spec, np.array([wa.symbols, wb.symbols]),
                                 np.array([x_src, x_dst], dtype=float))
            digits_cache[key] = (ya, za)
        return digits_cache[key]

    scale_stats = {}
    flagged = []
    flagged_hits = 0
    tested = 0
    test_depth = max(1, n // 2)
    seen_words = {}
    for i, j_share in zip(idx_a, share):
        block = d ** int(j_share)
        # partner: same most recent j_share symbols, different next digit
        digit = (i // block) % d
        new_digit = (digit + 1 + rng.integers(0, d - 1)) % d
        deep = rng.integers(0, max(1, weights.size // (block * d)))
        j = int(deep) * block * d + int(new_digit) * block + int(i % block)
        if j == i or j >= weights.size:
            continue
        ys, zs = rep_pair(i, j)
        p_dist = math.hypot(ys[0, 0] - ys[1, 0], zs[0, 0] - zs[1, 0])
        q_dist = math.hypot(ys[0, 1] - ys[1, 1], zs[0, 1] - zs[1, 1])
        if p_dist == 0.0:
            continue
        ratio = q_dist / p_dist
        bucket = int(math.floor(math.log2(p_dist)))
        stats = scale_stats.setdefault(
            bucket, {"count": 0, "ratio_max": 0.0, "ratio_sum": 0.0})
        stats["count"] += 1
        stats["ratio_max"] = max(stats["ratio_max"], ratio)
        stats["ratio_sum"] += ratio

        if int(i) not in seen_words:
            word = Word.from_index(int(i), d, n)
            res = strong_lipschitz_test(spec, word, test_depth, L, pool,
                                        x=x_src, n_min=test_depth)
            seen_words[int(i)] = (word, res)
        word, res = seen_words[int(i)]
        tested += 1
        if res.is_strong is False:
            flagged_hits += 1
            if word not in flagged:
                flagged.append(word)

    for stats in scale_stats.values():
        stats["ratio_mean"] = stats["ratio_sum"] / stats["count"]
        del stats["ratio_sum"]
    flagged_weight = flagged_hits / tested if tested else 0.0
    return HolonomyReport(
        x_src=float(x_src), x_dst=float(x_dst), scale_stats=scale_stats,
        strong_lipschitz_fraction=1.0 - flagged_weight,
        flagged_words=flagged, flagged_weight=float(flagged_weight))
