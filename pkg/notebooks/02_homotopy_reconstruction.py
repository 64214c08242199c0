# %% [markdown]
# # Recovering the vector Hamiltonian with the homotopy operator
#
# Contracting the flow into the volume form gives a closed 2-form Psi.
# The radial homotopy operator produces a 1-form potential h . dx with
# d(h . dx) = Psi; the radial gauge happens to reproduce the textbook h.

# %%
from nambu3d import frenet
from nambu3d.forms import KForm, VecField, d, homotopy_potential, interior_product, volume_form

psi = interior_product(frenet.FIELD, volume_form())
print("Psi =", psi.to_dict())
print("Psi == y dy^dz + (z - x) dz^dx - y dx^dy:", psi == frenet.PSI)

# %%
potential = homotopy_potential(psi)
h = VecField.from_one_form(potential)
for i, c in enumerate(h):
    print(f"h{i} = {c}")
print("d(h . dx) == Psi:", d(potential) == psi)

# %% [markdown]
# A non-closed form is rejected with its residual:

# %%
from nambu3d.forms import NotClosedError
from nambu3d.poly import Poly

x0, x1, x2 = Poly.variables()
try:
    homotopy_potential(KForm(2, {(0, 1): x2}))
except NotClosedError as exc:
    print("rejected:", exc)
