import math

import numpy as np
import pytest

from solenoidlab import (Point3, SolenoidSpec, SpecInvalidError, apply_map,
                         benchmark_a, benchmark_b, benchmark_c, inverse_base,
                         iterate, validate_spec)
from solenoidlab.maps import branch_points

TWO_PI = 2 * math.pi


def test_benchmark_a_passes_all_checks():
    report = validate_spec(benchmark_a(), grid_density=64)
    assert report.all_passed, [c.name for c in report.failures()]


def test_contraction_too_weak_fails_inv_eta_check():
    spec = SolenoidSpec(d=2, lam0=0.6, nu0=0.25, u_amp=0.3, v_amp=0.3)
    report = validate_spec(spec, grid_density=32)
    failed = {c.name for c in report.failures()}
    assert "lam_below_inv_eta" in failed  # 0.6 > 1/2


def test_wrong_derivative_order_fails():
    spec = SolenoidSpec(d=2, lam0=0.4, nu0=0.5, u_amp=0.3, v_amp=0.3)
    report = validate_spec(spec, grid_density=32)
    assert "nu_below_lam" in {c.name for c in report.failures()}


def test_validate_rejects_sparse_grid():
    with pytest.raises(ValueError):
        validate_spec(benchmark_a(), grid_density=8)


def test_apply_map_at_origin():
    jet = apply_map(benchmark_a(), Point3(0.0, 0.0, 0.0))
    assert jet.image == Point3(0.0, 0.5, 0.0)
    assert jet.eta_p == 2.0
    assert jet.lam_p == 0.4
    assert jet.nu_p == 0.25
    assert jet.a_off == 0.0


def test_apply_map_at_pi():
    jet = apply_map(benchmark_a(), Point3(math.pi, 0.0, 0.0))
    assert abs(jet.image.x) < 1e-12
    assert abs(jet.image.y + 0.5) < 1e-15
    assert abs(jet.image.z) < 1e-12


def test_apply_map_nonlinear_derivatives():
    jet = apply_map(benchmark_c(), Point3(math.pi / 2, 0.1, 0.0))
    assert abs(jet.lam_p - 0.40) < 1e-12
    assert abs(jet.eta_p - 2.0) < 1e-12


def test_apply_map_rejects_outside_point():
    with pytest.raises(ValueError):
        apply_map(benchmark_a(), Point3(0.0, 0.9, 0.9))


def test_apply_map_flags_escaping_image():
    # a family that pushes fiber images out of the disc is reported as such
    leaky = SolenoidSpec(d=2, lam0=0.4, nu0=0.25, u_amp=0.9, v_amp=0.0)
    with pytest.raises(SpecInvalidError, match="escapes"):
        apply_map(leaky, Point3(0.0, 0.9, 0.0))


def test_inverse_base_linear():
    spec = benchmark_a()
    assert abs(inverse_base(spec, math.pi, 0) - math.pi / 2) < 1e-12
    assert abs(inverse_base(spec, math.pi, 1) - 3 * math.pi / 2) < 1e-12
    with pytest.raises(ValueError):
        inverse_base(spec, 1.0, 2)


def test_inverse_base_nonlinear_fixed_point():
    spec = SolenoidSpec(d=2, eta_eps=0.3, lam0=0.35, nu0=0.15, u_amp=0.5,
                        v_amp=0.5)
    assert abs(inverse_base(spec, 0.0, 0)) < 1e-12


def test_inverse_base_roundtrip_all_branches():
    rng = np.random.default_rng(0)
    for spec in (benchmark_a(), benchmark_c(), SolenoidSpec(d=3, eta_eps=0.5,
                 lam0=0.2, nu0=0.1, u_amp=0.4, v_amp=0.4)):
        xs = rng.uniform(0.0, TWO_PI, 200)
        a = branch_points(spec)
        for b in range(spec.d):
            pre = np.array([inverse_base(spec, x, b) for x in xs])
            assert np.all(pre >= a[b] - 1e-12)
            assert np.all(pre <= a[b + 1] + 1e-12)
            back = np.mod(spec.eta_lift(pre), TWO_PI)
            err = np.minimum(np.abs(back - xs), TWO_PI - np.abs(back - xs))
            assert np.max(err) < 1e-10


def test_branch_points_partition_circle():
    spec = benchmark_c()
    a = np.array(branch_points(spec))
    assert a[0] == 0.0 and a[-1] == TWO_PI
    assert np.all(np.diff(a) > 0)


def test_derivatives_match_finite_differences():
    rng = np.random.default_rng(7)
    spec = SolenoidSpec(d=2, eta_eps=0.3, lam0=0.3, lam1=0.05, lam2=0.02,
                        nu0=0.1, nu1=0.03, nu2=0.04, u_amp=0.4, v_amp=0.4)
    h = 1e-6
    for _ in range(1000):
        x = rng.uniform(0, TWO_PI)
        r = rng.uniform(0, 0.8)
        phi = rng.uniform(0, TWO_PI)
        y, z = r * math.cos(phi), r * math.sin(phi)
        jet = apply_map(spec, Point3(x, y, z))
        fd_eta = (spec.eta_lift(x + h) - spec.eta_lift(x - h)) / (2 * h)
        fd_lam = (spec.lam(x, y + h) - spec.lam(x, y - h)) / (2 * h)
        fd_nu = (spec.nu(x, y, z + h) - spec.nu(x, y, z - h)) / (2 * h)
        fd_a = (spec.nu(x, y + h, z) - spec.nu(x, y - h, z)) / (2 * h)
        assert abs(fd_eta - jet.eta_p) <= 1e-5 * max(1.0, abs(jet.eta_p))
        assert abs(fd_lam - jet.lam_p) <= 1e-5 * max(1.0, abs(jet.lam_p))
        assert abs(fd_nu - jet.nu_p) <= 1e-5 * max(1.0, abs(jet.nu_p))
        assert abs(fd_a - jet.a_off) <= 1e-5 * max(1.0, abs(jet.a_off))


def test_iterate_identity_and_examples():
    spec = benchmark_a()
    p = Point3(0.3, 0.1, -0.2)
    assert iterate(spec, p, 0) == p
    fixed = iterate(spec, Point3(0.0, 5.0 / 6.0, 0.0), 1)
    assert abs(fixed.y - 5.0 / 6.0) < 1e-14
    two = iterate(spec, Point3(0.0, 0.0, 0.0), 2)
    assert abs(two.y - 0.7) < 1e-14


def test_orbits_stay_inside_domain():
    rng = np.random.default_rng(3)
    for spec in (benchmark_a(), benchmark_b(), benchmark_c()):
        for _ in range(20):
            r = rng.uniform(0, 0.95)
            phi = rng.uniform(0, TWO_PI)
            p = Point3(rng.uniform(0, TWO_PI), r * math.cos(phi),
                       r * math.sin(phi))
            q = iterate(spec, p, 50)
            assert q.in_domain()


def test_spec_serialization_roundtrip_and_rejection():
    spec = benchmark_c()
    assert SolenoidSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(SpecInvalidError, match="unknown"):
        SolenoidSpec.from_dict({"d": 2, "bogus": 1.0})
    with pytest.raises(SpecInvalidError, match="'d'"):
        SolenoidSpec.from_dict({"lam0": 0.4})
    assert spec.spec_hash() == SolenoidSpec.from_dict(spec.to_dict()).spec_hash()
