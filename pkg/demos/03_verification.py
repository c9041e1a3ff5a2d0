# %% [markdown]
# # Checking curves against independent computations
#
# Three independent checks: finite-difference fundamental forms of the
# embedded hypersurface, a direct RK4 integration of the curvature ODE, and
# a comparison of profiles with a shared extremum.

# %%
import numpy as np

from rotgauss import CurveParams, check_comparison, numeric_curvatures, numeric_forms, solve_constant_K
from rotgauss.oracle import equivalence_error

# %% [markdown]
# ## Fundamental forms
#
# Embed the profile in R^5 with random sphere angles and difference the
# chart. The product of the principal curvatures should return K; the
# error shrinks like h^2.

# %%
c = solve_constant_K(CurveParams(5, 2.0, 0.5), count=3)
for h in (1e-2, 5e-3, 2.5e-3):
    forms = numeric_forms(c, 0.1, [0.3, 1.0, 2.0], h)
    ev, K = numeric_curvatures(forms)
    print(f"h={h:.1e}  K={K:.10f}  off-diagonal {max(forms.offdiagonal()):.1e}")
print(ev)

# %% [markdown]
# ## Direct integration

# %%
for p in (CurveParams(3, 1.0, 2.0), CurveParams(5, -2.0, -0.5)):
    print(p, equivalence_error(p))

# %% [markdown]
# ## Comparison
#
# Two profiles sharing their top radius: the more curved one falls away
# from the axis faster, so at equal height its radius is smaller.

# %%
rep = check_comparison(2.0, 1.0, 0.8, 4)
print(np.round(rep.differences, 5))
print(rep.passed)
