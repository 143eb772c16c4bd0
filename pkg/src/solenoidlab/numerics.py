"""Low-level numerical helpers: guarded Newton inversion and interval trig.

Everything here is vectorized over numpy arrays and used by the map,
coding, and thermodynamic modules.  The interval routines return outward
enclosures (min, max) so callers can build rigorous sup/inf bounds.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def solve_increasing(f, fprime, targets, lo, hi, tol=1e-13, max_iter=80):
    """Solve f(x) = target on a strictly increasing branch, vectorized.

    Newton iteration clamped to the bracket [lo, hi]; falls back to the
    bracket midpoint whenever a Newton step leaves the bracket.  Returns
    the root array; raises if the iteration stalls (non-expanding base).
    """
    targets = np.asarray(targets, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), targets.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), targets.shape).copy()
    x = 0.5 * (lo + hi)
    # Elements freeze once converged, so each trajectory depends only on
    # its own inputs and results are identical under any batch chunking.
    frozen = np.zeros(targets.shape, dtype=bool)
    for _ in range(max_iter):
        fx = f(x) - targets
        lo = np.where(~frozen & (fx < 0.0), x, lo)
        hi = np.where(~frozen & (fx > 0.0), x, hi)
        dfx = fprime(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = fx / dfx
        x_new = x - step
        bad = ~np.isfinite(x_new) | (x_new < lo) | (x_new > hi)
        x_new = np.where(bad, 0.5 * (lo + hi), x_new)
        converged = np.abs(x_new - x) <= tol * np.maximum(1.0, np.abs(x_new))
        x = np.where(frozen, x, x_new)
        frozen |= converged
        if bool(np.all(frozen)):
            break
    return x


def _crosses(lo, hi, theta):
    """True where the interval [lo, hi] contains theta modulo 2*pi."""
    k = np.ceil((lo - theta) / TWO_PI)
    return theta + TWO_PI * k <= hi


def interval_sin(lo, hi):
    """Range of sin over [lo, hi], returned as (min, max) arrays."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    slo, shi = np.sin(lo), np.sin(hi)
    smin = np.where(_crosses(lo, hi, -0.5 * np.pi), -1.0, np.minimum(slo, shi))
    smax = np.where(_crosses(lo, hi, 0.5 * np.pi), 1.0, np.maximum(slo, shi))
    return smin, smax


def interval_cos(lo, hi):
    """Range of cos over [lo, hi], returned as (min, max) arrays."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    clo, chi = np.cos(lo), np.cos(hi)
    cmin = np.where(_crosses(lo, hi, np.pi), -1.0, np.minimum(clo, chi))
    cmax = np.where(_crosses(lo, hi, 0.0), 1.0, np.maximum(clo, chi))
    return cmin, cmax


def interval_mul(alo, ahi, blo, bhi):
    """Product of two intervals, (min, max) of the four corner products."""
    p1, p2, p3, p4 = alo * blo, alo * bhi, ahi * blo, ahi * bhi
    pmin = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    pmax = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    return pmin, pmax


def interval_square(lo, hi):
    """Range of x**2 over [lo, hi]."""
    smax = np.maximum(lo * lo, hi * hi)
    smin = np.where((lo <= 0.0) & (hi >= 0.0), 0.0, np.minimum(lo * lo, hi * hi))
    return smin, smax
