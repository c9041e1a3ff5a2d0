# %% [markdown]
# # Prescribed curvature K(t)
#
# When K depends on arclength there is no first integral and the ODE is
# integrated directly with RK4.

# %%
import numpy as np

from rotgauss import BumpSpec, RiccatiCase, bump_shooting, riccati_closed_form, solve_prescribed_K
from rotgauss.prescribed import riccati_state

# %% [markdown]
# ## K(t) = -a / t^2 in dimension three
#
# The ODE is of Euler type. Its exact solutions come in three families
# depending on 4a + 1. The form obtained by reducing to a Riccati equation
# and dropping prefactors is kept for comparison; its residual does not
# vanish.

# %%
for case in (RiccatiCase(-3 / 16), RiccatiCase(-0.25, c=-1.0, scale=0.5), RiccatiCase(-1.25)):
    rows = np.array([riccati_closed_form(case, t) for t in (1.5, 2.0, 3.0)])
    print(f"case {case.case_id}: corrected residual {np.max(np.abs(rows[:, 3])):.1e}, "
          f"reduced-form residual {np.max(np.abs(rows[:, 2])):.3f}")

case = RiccatiCase(-3 / 16)
curve = solve_prescribed_K(case.K, riccati_state(case, 1.0), 1e-3, (1.0, 50.0), n=3)
exact = np.array([riccati_closed_form(case, t)[1] for t in curve.t])
print("RK4 against the closed form:", np.max(np.abs(curve.phi - exact)))

# %% [markdown]
# ## Bending a cylinder
#
# Start on the cylinder phi = 1 with K = 0 and ramp the curvature up to 1
# over [-1, -eps]. If the slope could be brought back to zero at t = 0 the
# profile would join a sphere smoothly. Over the ramps tried here it stays
# clearly negative.

# %%
report = bump_shooting(BumpSpec(3, 1.0, 0.5), np.linspace(0.1, 0.9, 9))
for eps, d in zip(report.eps, report.dphi0):
    print(f"eps={eps:.1f}  phi'(0)={d:.6f}")
print("feasible:", report.feasible)
