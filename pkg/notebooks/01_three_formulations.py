# %% [markdown]
# # One flow, three formulations
#
# The Frenet system x' = y, y' = z - x, z' = -y (written over x0, x1, x2)
# can be generated three ways: as a linear field, as a Nambu flow with two
# Hamiltonians, and as the curl of a vector Hamiltonian. All three give the
# same polynomial right-hand side exactly.

# %%
from nambu3d import frenet
from nambu3d.forms import div, rot
from nambu3d.mechanics import HALF, UNIT, nambu_bracket, nambu_flow_field

print("linear field     :", frenet.FIELD.strings())
print("Nambu (H1, H2)   :", nambu_flow_field(frenet.PAIR, UNIT).strings())
print("rot(h)           :", rot(frenet.VECTOR_HAMILTONIAN).strings())

# %% [markdown]
# The Nambu bracket is the Jacobian determinant of its three arguments.
# With the 1/2 prefactor kept on the bivector field, the flow comes out at
# half speed:

# %%
print("Nambu, half      :", nambu_flow_field(frenet.PAIR, HALF).strings())

# %% [markdown]
# Both Hamiltonians are conserved by construction, and the field is
# divergence-free (the volume form is preserved).

# %%
H1, H2 = frenet.H1, frenet.H2
print("{H1, H2, H1} =", nambu_bracket(H1, H2, H1))
print("{H1, H2, H2} =", nambu_bracket(H1, H2, H2))
print("div field    =", div(frenet.FIELD))
