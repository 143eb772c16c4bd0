"""Triangular solenoid map families on the solid torus S^1 x D.

A family is a closed-form parametric map

    f(x, y, z) = (eta(x), lam(x, y) + u(x), nu(x, y, z) + v(x))

with

    eta(x)     = d*x + eta_eps*sin(x)          (mod 2*pi)
    lam(x, y)  = (lam0 + lam1*sin(x))*y + lam2*y**2
    nu(x,y,z)  = (nu0 + nu1*cos(x))*z + nu2*y*z
    u(x)       = u_amp*cos(x),   v(x) = v_amp*sin(x)

so lam(x, 0) = nu(x, 0, 0) = 0 holds identically and all partial
derivatives are available in closed form.  Specs are immutable and
hashable; every operation is a pure function of (spec, inputs).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, fields
from functools import lru_cache

import numpy as np

from .errors import SpecInvalidError
from .numerics import TWO_PI, solve_increasing

SPEC_FIELDS = ("d", "eta_eps", "lam0", "lam1", "lam2",
               "nu0", "nu1", "nu2", "u_amp", "v_amp")


@dataclass(frozen=True)
class SolenoidSpec:
    """Parameters of one triangular solenoid family."""

    d: int
    eta_eps: float = 0.0
    lam0: float = 0.0
    lam1: float = 0.0
    lam2: float = 0.0
    nu0: float = 0.0
    nu1: float = 0.0
    nu2: float = 0.0
    u_amp: float = 0.0
    v_amp: float = 0.0

    def __post_init__(self):
        if int(self.d) < 2:
            raise SpecInvalidError(f"base degree d must be >= 2, got {self.d}")
        object.__setattr__(self, "d", int(self.d))
        for name in SPEC_FIELDS[1:]:
            object.__setattr__(self, name, float(getattr(self, name)))

    # -- base circle map ----------------------------------------------------

    def eta_lift(self, x):
        """Lift of the base map to the real line (strictly increasing)."""
        x = np.asarray(x, dtype=float)
        return self.d * x + self.eta_eps * np.sin(x)

    def eta(self, x):
        return np.mod(self.eta_lift(x), TWO_PI)

    def eta_prime(self, x):
        return self.d + self.eta_eps * np.cos(np.asarray(x, dtype=float))

    def eta_inverse_lift(self, targets):
        """Inverse of the lift: the unique x with eta_lift(x) = target."""
        e = abs(self.eta_eps)
        if self.d - e <= 0.0:
            raise SpecInvalidError("base map is not monotone (d <= |eta_eps|)")
        t = np.asarray(targets, dtype=float)
        return solve_increasing(self.eta_lift, self.eta_prime, t,
                                (t - e) / self.d, (t + e) / self.d)

    # -- fiber maps ----------------------------------------------------------

    def lam(self, x, y):
        return (self.lam0 + self.lam1 * np.sin(x)) * y + self.lam2 * y * y

    def lam_prime(self, x, y):
        return self.lam0 + self.lam1 * np.sin(x) + 2.0 * self.lam2 * y

    def nu(self, x, y, z):
        return (self.nu0 + self.nu1 * np.cos(x)) * z + self.nu2 * y * z

    def nu_prime(self, x, y):
        """d(nu)/dz; independent of z for this family."""
        return self.nu0 + self.nu1 * np.cos(x) + self.nu2 * y

    def off_diag(self, z):
        """d(nu)/dy, the off-diagonal entry of the fiber differential."""
        return self.nu2 * np.asarray(z, dtype=float)

    def u(self, x):
        return self.u_amp * np.cos(x)

    def v(self, x):
        return self.v_amp * np.sin(x)

    # -- analytic derivative bounds over the solid torus ---------------------

    def eta_prime_range(self):
        return self.d - abs(self.eta_eps), self.d + abs(self.eta_eps)

    def lam_prime_range(self):
        spread = abs(self.lam1) + 2.0 * abs(self.lam2)
        return self.lam0 - spread, self.lam0 + spread

    def nu_prime_range(self):
        spread = abs(self.nu1) + abs(self.nu2)
        return self.nu0 - spread, self.nu0 + spread

    def contraction_sup(self):
        """Upper bound on the fiber contraction rate sup lam'."""
        return self.lam_prime_range()[1]

    # -- serialization --------------------------------------------------------

    def to_dict(self):
        return {name: getattr(self, name) for name in SPEC_FIELDS}

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise SpecInvalidError("spec must be a JSON object")
        unknown = sorted(set(data) - set(SPEC_FIELDS))
        if unknown:
            raise SpecInvalidError(f"unknown spec fields: {', '.join(unknown)}")
        if "d" not in data:
            raise SpecInvalidError("missing spec field 'd'")
        return cls(**data)

    def spec_hash(self):
        blob = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


assert SPEC_FIELDS == tuple(f.name for f in fields(SolenoidSpec))


@lru_cache(maxsize=32)
def branch_points(spec: SolenoidSpec) -> tuple:
    """Points a_0=0 < a_1 < ... < a_d = 2*pi with eta(a_i) = 0.

    [a_i, a_(i+1)] is the i-th monotone branch interval of the base map.
    """
    targets = TWO_PI * np.arange(spec.d + 1, dtype=float)
    pts = spec.eta_inverse_lift(targets)
    pts[0] = 0.0
    pts[-1] = TWO_PI
    return tuple(pts)


@dataclass(frozen=True)
class Point3:
    """A point of the solid torus: angle x in [0, 2*pi), fiber (y, z) in the open disc."""

    x: float
    y: float
    z: float

    def in_domain(self):
        return self.y * self.y + self.z * self.z < 1.0

    def as_array(self):
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class MapJet:
    """Image point together with the derivative entries at the source point."""

    image: Point3
    eta_p: float   # base expansion eta'
    lam_p: float   # fiber contraction lam' = d lam / dy
    nu_p: float    # strong contraction nu' = d nu / dz
    a_off: float   # off-diagonal entry d nu / dy


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    witness: tuple | None = None


@dataclass(frozen=True)
class ValidationReport:
    spec: SolenoidSpec
    checks: tuple

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "spec_hash": self.spec.spec_hash(),
            "all_passed": self.all_passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail,
                 "witness": list(c.witness) if c.witness is not None else None}
                for c in self.checks
            ],
        }


def _grid_min(values, points):
    i = int(np.argmin(values))
    return float(values[i]), tuple(float(c) for c in points[i])


def validate_spec(spec: SolenoidSpec, grid_density: int = 64) -> ValidationReport:
    """Check the structural hypotheses of a family on a dense sample grid.

    Failures are reported with a witnessing grid point; nothing is raised.
    The injectivity check is a sampled sufficient condition (branch image
    tubes stay pairwise separated on every sampled fiber), not a proof.
    """
    if grid_density < 16:
        raise ValueError("grid_density must be >= 16")
    checks = []
    xs = np.linspace(0.0, TWO_PI, grid_density, endpoint=False)
    ys = np.linspace(-1.0, 1.0, grid_density)

    # eta' > 1 everywhere.
    ep = spec.eta_prime(xs)
    val, wit = _grid_min(ep, xs[:, None])
    checks.append(CheckResult(
        "eta_expanding", bool(val > 1.0),
        f"min eta' = {val:.6g} (need > 1)", wit if val <= 1.0 else None))

    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    lam_p = spec.lam_prime(gx, gy).ravel()
    nu_p = spec.nu_prime(gx, gy).ravel()

    val, wit = _grid_min(nu_p, pts)
    checks.append(CheckResult(
        "nu_prime_positive", bool(val > 0.0),
        f"min nu' = {val:.6g} (need > 0)", wit if val <= 0.0 else None))

    val, wit = _grid_min(lam_p - nu_p, pts)
    checks.append(CheckResult(
        "nu_below_lam", bool(val > 0.0),
        f"min (lam' - nu') = {val:.6g} (need ν' < λ')",
        wit if val <= 0.0 else None))

    val, wit = _grid_min(1.0 - lam_p, pts)
    checks.append(CheckResult(
        "lam_below_one", bool(val > 0.0),
        f"max lam' = {1.0 - val:.6g} (need < 1)", wit if val <= 0.0 else None))

    # lam' < 1/eta', the thin-regime pairing of contraction vs expansion.
    ep_grid = spec.eta_prime(gx).ravel()
    val, wit = _grid_min(1.0 / ep_grid - lam_p, pts)
    checks.append(CheckResult(
        "lam_below_inv_eta", bool(val > 0.0),
        f"min (1/eta' - lam') = {val:.6g} (need λ' < 1/η')",
        wit if val <= 0.0 else None))

    # f(closure M) inside M, on a polar grid of the closed disc.
    phis = np.linspace(0.0, TWO_PI, grid_density, endpoint=False)
    rads = np.linspace(0.0, 1.0, max(8, grid_density // 4))
    px, pr, pphi = np.meshgrid(xs, rads, phis, indexing="ij")
    py = pr * np.cos(pphi)
    pz = pr * np.sin(pphi)
    img_y = spec.lam(px, py) + spec.u(px)
    img_z = spec.nu(px, py, pz) + spec.v(px)
    norm2 = (img_y ** 2 + img_z ** 2).ravel()
    coords = np.column_stack([px.ravel(), py.ravel(), pz.ravel()])
    i = int(np.argmax(norm2))
    val = float(norm2[i])
    checks.append(CheckResult(
        "image_inside_domain", bool(val < 1.0),
        f"max |f(p)|_fiber^2 = {val:.6g} (need < 1)",
        tuple(float(c) for c in coords[i]) if val >= 1.0 else None))

    # Injectivity: branch image tubes pairwise separated on sampled fibers.
    margin, wit = _branch_separation(spec, xs)
    checks.append(CheckResult(
        "branch_tubes_disjoint", bool(margin > 0.0),
        "min (center distance - extent sum) = "
        f"{margin:.6g} over sampled fibers (sampled sufficient condition)",
        wit if margin <= 0.0 else None))

    return ValidationReport(spec=spec, checks=tuple(checks))


def _branch_separation(spec, fibers):
    """Worst-case gap between branch image tubes over the sampled fibers."""
    worst = math.inf
    witness = None
    d = spec.d
    for x in fibers:
        pre = spec.eta_inverse_lift(x + TWO_PI * np.arange(d))
        cy = spec.u(pre)
        cz = spec.v(pre)
        # The image of a fiber disc at x~ sits inside the disc of radius
        # max(sup|lam|, sup|nu|) around (u(x~), v(x~)).
        ext_y = np.abs(spec.lam0 + spec.lam1 * np.sin(pre)) + abs(spec.lam2)
        ext_z = np.abs(spec.nu0 + spec.nu1 * np.cos(pre)) + abs(spec.nu2)
        ext = np.maximum(ext_y, ext_z)
        for i in range(d):
            for j in range(i + 1, d):
                dist = math.hypot(cy[i] - cy[j], cz[i] - cz[j])
                gap = dist - (ext[i] + ext[j])
                if gap < worst:
                    worst = gap
                    witness = (float(x), float(pre[i]), float(pre[j]))
    return worst, witness


def apply_map(spec: SolenoidSpec, p: Point3) -> MapJet:
    """Evaluate the map and its fiber/base derivative entries at p."""
    if not p.in_domain():
        raise ValueError(f"point {p} lies outside the open disc fiber")
    x, y, z = p.x, p.y, p.z
    img = Point3(
        x=float(np.mod(spec.eta_lift(x), TWO_PI)),
        y=float(spec.lam(x, y) + spec.u(x)),
        z=float(spec.nu(x, y, z) + spec.v(x)),
    )
    if not img.in_domain():
        raise SpecInvalidError(
            f"image {img} escapes the solid torus; the family does not map M into M")
    return MapJet(
        image=img,
        eta_p=float(spec.eta_prime(x)),
        lam_p=float(spec.lam_prime(x, y)),
        nu_p=float(spec.nu_prime(x, y)),
        a_off=float(spec.off_diag(z)),
    )


def inverse_base(spec: SolenoidSpec, x: float, branch: int) -> float:
    """The preimage of x under the base map on the given monotone branch.

    Returns the unique point of [a_branch, a_(branch+1)] mapping to x
    (mod 2*pi); solved to ~1e-12 by guarded Newton on the lift.
    """
    if not 0 <= branch < spec.d:
        raise ValueError(f"branch must lie in [0, {spec.d}), got {branch}")
    x = float(np.mod(x, TWO_PI))
    root = float(spec.eta_inverse_lift(x + TWO_PI * branch))
    return root


def iterate(spec: SolenoidSpec, p: Point3, n: int) -> Point3:
    """n-fold composition of the map; n = 0 returns p unchanged."""
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    q = p
    for _ in range(n):
        q = apply_map(spec, q).image
    return q


# Reference families used across tests and demos.

def benchmark_a() -> SolenoidSpec:
    """Constant derivatives: d=2, lam'=0.4, nu'=0.25, u=v=0.5-amplitude."""
    return SolenoidSpec(d=2, lam0=0.4, nu0=0.25, u_amp=0.5, v_amp=0.5)


def benchmark_b() -> SolenoidSpec:
    """Strongly dissipative z-direction (nu'=0.05): thin but not bunched."""
    return SolenoidSpec(d=2, lam0=0.4, nu0=0.05, u_amp=0.5, v_amp=0.5)


def benchmark_c() -> SolenoidSpec:
    """Nonlinear base and fiber rates: eta = 2x + 0.3 sin x, lam' = 0.35 + 0.05 sin x."""
    return SolenoidSpec(d=2, eta_eps=0.3, lam0=0.35, lam1=0.05, nu0=0.15,
                        u_amp=0.5, v_amp=0.5)
