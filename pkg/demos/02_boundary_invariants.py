# %% [markdown]
# # A cuspidal edge with a boundary
#
# We pick normal-form coefficients, hide them behind a random change of
# source coordinates, a rotation and a reparametrized boundary, then try to
# get them back.  Two independent routes compute the boundary invariants:
# closed forms in the coefficients and finite differences of the actual
# surface.

# %%
import numpy as np

from cuspidal import boundary
from cuspidal.surface import reduce_to_normal_form
from cuspidal.synth import disguise, random_normal_form

rng = np.random.default_rng(11)
nf = random_normal_form(rng, case=1)
f, b, _ = disguise(nf, rng)
print("hidden surface coefficients :", np.round(nf.surface_vector(), 6))
got = reduce_to_normal_form(f, b)
print("recovered                   :", np.round(got.surface_vector(), 6))
print("boundary (eps, c1, c2, c3)  :", np.round(got.boundary_vector(), 6))

# %% [markdown]
# Closed forms against the numeric route.  Geodesic curvature quantities
# are compared after the fixed sign convention of the numeric route.

# %%
closed = boundary.case1_closed_forms(got)
numeric = boundary.case1_numeric(f, b)
errs = boundary.compare(closed, numeric)
conv = boundary.to_numeric_convention(closed).to_dict()
for name, value in numeric.to_dict().items():
    print(f"{name:16s} closed {conv[name]: .10f}  numeric {value: .10f}  err {errs[name]:.1e}")

# %% [markdown]
# The approaching ratio does not care how either curve is parametrized.

# %%
from cuspidal.jets import Jet1
from cuspidal.synth import random_reparam

l = boundary.classify_boundary(f, b).l
t = random_reparam(rng)
s = Jet1(np.concatenate([[0.0, l * t.coeff(1)], random_reparam(rng).coeffs[2:]]), 6)
print("alpha:", boundary.approaching_ratio(f, b), boundary.approaching_ratio(f, b, s, t),
      "|c1| =", abs(nf.boundary.c1))

# %% [markdown]
# ## Boundary along the null direction
#
# When the boundary is tangent to the kernel its image has a cusp.  The
# angle between that cusp and the edge is measured as a cosine, which for
# the normal form equals d2 / sqrt(1 + d2^2).

# %%
nf2 = random_normal_form(rng, case=2)
f2, b2, _ = disguise(nf2, rng)
d2 = nf2.boundary.d2
print(f"measured cosine {boundary.angle_beta(f2, b2):.10f}")
print(f"d2 / sqrt(1+d2^2) = {d2 / np.sqrt(1 + d2 ** 2):.10f},  d2 = {d2:.10f}")
closed2 = boundary.case2_closed_forms(nf2)
numeric2 = boundary.case2_numeric(f2, b2)
print("cuspidal curvature:", closed2.kappa_sing_b, numeric2.kappa_sing_b)
print("cuspidal torsion  :", closed2.tau_sing_b, numeric2.tau_sing_b)
