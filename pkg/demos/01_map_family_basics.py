"""Define a solenoid family, check its hypotheses, and watch orbits settle.

The map wraps the solid torus d times around the base circle while
contracting every fiber disc; the validator samples the structural
hypotheses (expansion, contraction ordering, domain containment, branch
tube separation) and reports each with a witness on failure.
"""

import numpy as np

from solenoidlab import (Point3, SolenoidSpec, apply_map, benchmark_a,
                         inverse_base, iterate, validate_spec)

spec = benchmark_a()
print("family:", spec)
print("hash:  ", spec.spec_hash())

report = validate_spec(spec, grid_density=64)
for check in report.checks:
    print(f"  {'ok ' if check.passed else 'FAIL'} {check.name}: {check.detail}")

# The fiber maps contract, so every orbit is pulled onto the attractor.
p = Point3(1.0, 0.3, -0.4)
for n in (1, 5, 20):
    q = iterate(spec, p, n)
    print(f"f^{n}(p) = ({q.x:.4f}, {q.y:.6f}, {q.z:.6f})")

# One application also reports the derivative entries at the point.
jet = apply_map(spec, Point3(0.0, 0.0, 0.0))
print("jet at origin:", jet)

# The base map has d monotone branches; their inverses partition the circle.
for b in range(spec.d):
    print(f"branch {b} preimage of pi: {inverse_base(spec, np.pi, b):.6f}")

# A family that contracts too weakly fails the pairing hypothesis.
bad = SolenoidSpec(d=2, lam0=0.6, nu0=0.25, u_amp=0.3, v_amp=0.3)
failures = [c.name for c in validate_spec(bad, 32).failures()]
print("weak contraction fails:", failures)
