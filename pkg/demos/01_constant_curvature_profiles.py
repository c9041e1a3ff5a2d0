# %% [markdown]
# # Profiles of constant Gauss-Kronecker curvature
#
# A hypersurface of revolution in R^n is generated by a profile
# (phi(t), psi(t)) parametrised by arclength. Constant curvature K leaves
# one free constant C_K, and the sign of K together with C_K decides what
# the profile looks like.

# %%
import numpy as np

from rotgauss import CurveParams, period_data, phi_bounds, solve_constant_K

# %% [markdown]
# ## Positive curvature
#
# C_K = 0 is the round sphere. Pushing C_K above zero opens the poles into
# rims where the tangent turns vertical; between -1 and 0 the arch bulges
# less and still reaches the axis.

# %%
for ck in (-0.5, 0.0, 0.5, 2.0):
    p = CurveParams(4, 1.0, ck)
    pd = period_data(p)
    c = solve_constant_K(p, count=9)
    print(f"C_K={ck:5}  phi in {np.round(phi_bounds(p), 4)}  half period {pd.half_period:.6f}  "
          f"ends {[e.value for e in c.endpoints]}")

# %% [markdown]
# Arches that end in rims can be glued into longer chains. The height of
# each arch is added so the chain climbs the axis.

# %%
chain = solve_constant_K(CurveParams(4, 1.0, 0.5), count=13, periods=3)
for t, phi, psi in zip(chain.t, chain.phi, chain.psi):
    print(f"{t:8.4f} {phi:8.4f} {psi:8.4f}")

# %% [markdown]
# ## Negative curvature
#
# For K < 0 there are three regimes: necks (C_K < -1), the pseudosphere
# (C_K = -1, with an infinite end), and single branches that leave the
# axis at a cone point (-1 < C_K < 0).

# %%
for ck in (-2.0, -1.0, -0.5):
    c = solve_constant_K(CurveParams(5, -1.0, ck), count=5)
    print(ck, [e.value for e in c.endpoints], np.round(c.phi, 4))

# %% [markdown]
# Every curve carries its exact representation, so it can be evaluated off
# the sample grid. The dump is CSV with 17 significant digits.

# %%
neck = solve_constant_K(CurveParams(5, -1.0, -2.0), count=7)
print(neck.evaluate([0.0, 0.1])[0])
print(neck.to_csv())
