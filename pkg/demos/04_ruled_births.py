# %% [markdown]
# # Singularities appearing on a flat ruled strip
#
# A flat ruled surface F(t, v) = gamma(t) + v delta(t) is fixed by three
# functions x, y, kappa_delta and an initial orthonormal pair.  Its
# singular set is v = -y(t).  On the strip |v| < eps the surface is regular;
# extending v up to M lets the singular curve enter, first at a minimum of
# |y|.

# %%
import tempfile
from pathlib import Path

from cuspidal import ruled

inp = ruled.RuledInput(x=0.5, y=[1.5, 0, 1], kappa_delta=1.0,
                       delta0=[1, 0, 0], delta1=[0, 1, 0], eps=1.0, M=2.0)
surf = ruled.build_surface(inp)
print("flat:", ruled.is_flat(surf.gamma, surf.delta, surf.ts, surf.gamma_prime, surf.delta_prime))

for rep in ruled.find_births(inp):
    print(f"birth at t0 = {rep.t0:.3g}, v0 = {rep.v0:.3g}: cuspidal edge {rep.is_cuspidal_edge},"
          f" generic {rep.is_generic_birth}")
    print("  diagnostics:", {k: round(v, 6) for k, v in rep.diagnostics.items()})

# %% [markdown]
# Independent check: take the Taylor jet of F at the birth point, reduce it
# to the cuspidal-edge normal form with the line v = v0 as boundary and read
# off the boundary coefficients.  A generic birth has c1 = 0 and c2 != 0.

# %%
c1, c2 = ruled.birth_cross_check(surf, ruled.find_births(inp)[0])
print(f"c1 = {c1:.2e}, c2 = {c2:.6f}")

# %% [markdown]
# A flatter minimum (y = 1.5 + t^4) is still a birth but not a generic one.

# %%
quartic = ruled.RuledInput(x=0.5, y=[1.5, 0, 0, 0, 1], kappa_delta=1.0,
                           delta0=[1, 0, 0], delta1=[0, 1, 0], eps=1.0, M=2.0)
print([(r.t0, r.is_generic_birth) for r in ruled.find_births(quartic)])

# %% [markdown]
# Export a mesh; the strip and the singular curve are tagged in the OBJ file.

# %%
mesh = ruled.mesh_export(surf, nt=61, nv=25)
path = Path(tempfile.gettempdir()) / "ruled_birth.obj"
ruled.write_obj(mesh, path)
print(f"{len(mesh.vertices)} vertices, {mesh.strip.sum()} in the strip, written to {path}")
