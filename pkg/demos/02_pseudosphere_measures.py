# %% [markdown]
# # Area and volume of pseudospheres
#
# The pseudosphere has an infinite end that thins out towards the axis. In
# dimension three it thins exponentially (the tractroid); in higher
# dimension only algebraically, phi ~ f |t|^(2/(3-n)).

# %%
import math

import numpy as np

from rotgauss import CurveParams, enclosed_volume, solve_constant_K, surface_area
from rotgauss.series import asymptotic_pseudosphere, pseudosphere_coefficients, pseudosphere_time_shift

# %% [markdown]
# ## The tractroid
#
# Both halves together have area 4 pi and enclose 2 pi / 3.

# %%
tractroid = solve_constant_K(CurveParams(3, -1.0, -1.0), t_min=-30.0)
print(surface_area(tractroid, both_halves=True).value / math.pi, "pi")
print(enclosed_volume(tractroid, both_halves=True).value / math.pi, "pi")

# %% [markdown]
# ## n = 4
#
# The curve is cut at t = -25 and the part beyond the cut is integrated
# exactly, so the reported bound only reflects quadrature error.

# %%
ps = solve_constant_K(CurveParams(4, -1.0, -1.0), t_min=-25.0)
for conv in ("geometric", "paper"):
    S, V = surface_area(ps, convention=conv), enclosed_volume(ps, convention=conv)
    print(f"{conv:9}  S={S.value:.10f}  V={V.value:.10f}  bound {S.truncation_tail_bound:.1e}")
print("2 pi^2 =", 2 * math.pi ** 2, " 16 pi / 3 =", 16 * math.pi / 3)

# %% [markdown]
# Without the exact tail the loss at t = -25 is of order |t|^-3 for the
# area, which the bound of the truncated measure shows.

# %%
cut = surface_area(ps, include_tail=False)
print(cut.value, cut.truncation_tail_bound)

# %% [markdown]
# ## The asymptotic law
#
# The leading coefficient for n = 4 is f = 6. The law holds after shifting
# time by the constant that fixes where the rim sits.

# %%
f, g = pseudosphere_coefficients(4, -1.0)
tau = pseudosphere_time_shift(4, -1.0)
t = -np.array([50.0, 100.0, 400.0])
exact = ps.evaluate(t)[0]
print(f, g, tau)
print(np.abs(asymptotic_pseudosphere(t - tau, 4, -1.0) / exact - 1))
