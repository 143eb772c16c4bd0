"""The pressure equation: bracketing the predicted slice dimension.

Weighted cylinder sums give two-sided pressure bounds at every
generation; the exponent where the pressure crosses zero is the
predicted dimension of each stable slice.  For constant derivative
families the root has a closed form, which makes a sharp end-to-end
check of the whole bracket machinery.
"""

import math

import numpy as np

from solenoidlab import benchmark_a, benchmark_c
from solenoidlab.thermo import (build_gibbs_model, classify_regime,
                                pressure_bracket, solve_bowen)

spec = benchmark_a()
print("pressure curve (generation 8):")
for t in np.linspace(0.0, 1.2, 7):
    b = pressure_bracket(spec, float(t), 8)
    print(f"  t={t:.2f}: [{b.p_lo:+.6f}, {b.p_hi:+.6f}]")

lo, hi = solve_bowen(spec, 8, 1e-6)
closed = math.log(2) / math.log(2.5)
print(f"root interval [{lo:.8f}, {hi:.8f}]  closed form {closed:.8f}")

# The Gibbs model adds normalized cylinder weights, the averaged
# log-derivatives, and the weight entropy.
model = build_gibbs_model(spec, 12)
print(f"chi_eta={model.chi_eta:.6f} chi_lam={model.chi_lam:.6f} "
      f"chi_nu={model.chi_nu:.6f}")
print(f"entropy={model.entropy:.6f}  "
      f"t0*(-chi_lam)={model.t0_mid * -model.chi_lam:.6f}")
print("regime:", classify_regime(spec, model))

# Nonlinear rates tighten with the generation; the brackets are nested.
nonlinear = benchmark_c()
for n in (8, 12, 16):
    lo, hi = solve_bowen(nonlinear, n, 1e-6)
    print(f"nonlinear family, generation {n}: "
          f"[{lo:.6f}, {hi:.6f}] width {hi - lo:.4f}")
