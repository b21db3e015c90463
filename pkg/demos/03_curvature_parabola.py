# %% [markdown]
# # The curvature parabola of a cuspidal edge
#
# At a corank-one point the second fundamental data sweep out a set in the
# normal plane.  For a cuspidal edge it is a half-line whose distance from
# the origin is the limiting normal curvature.  A transverse boundary adds
# a principal normal line through the origin.  It meets the half-line's
# carrier at a point P whose distance to the endpoint V is c1^2.

# %%
import tempfile
from pathlib import Path

import numpy as np

from cuspidal import parabola
from cuspidal.boundary import approaching_ratio
from cuspidal.synth import disguise, random_normal_form

rng = np.random.default_rng(5)
nf = random_normal_form(rng, case=1, b20_min=0.2)
f, b, _ = disguise(nf, rng)
p = parabola.curvature_parabola(f)
print("kind:", p.kind.value)
print(f"umbilic curvature {parabola.umbilic_curvature(p):.12f}   b20 {nf.b20:.12f}")

V, P, dist = parabola.vertex_and_intersection(f, b)
print(f"|V - P| = {dist:.12f},  c1^2 = {nf.boundary.c1 ** 2:.12f},  alpha^2 = {approaching_ratio(f, b) ** 2:.12f}")

# %% [markdown]
# A picture of the normal plane with the half-line, V, P and the boundary's
# principal normal.

# %%
out = Path(tempfile.gettempdir()) / "curvature_parabola.svg"
out.write_text(parabola.parabola_svg(p, V, P, parabola.principal_normal(f, b)))
print("wrote", out)

# %% [markdown]
# For a cross cap the set is an honest parabola.

# %%
from cuspidal.jets import Jet2
from cuspidal.surface import SurfaceGerm

cc = SurfaceGerm([Jet2.from_terms({(1, 0): 1}, 4), Jet2.from_terms({(1, 1): 1}, 4),
                  Jet2.from_terms({(0, 2): 1}, 4)])
q = parabola.curvature_parabola(cc)
print(q.kind.value, "quadratic coefficient", q.quadratic_coeff)
