# %% [markdown]
# # Vector Lagrangian, multipliers and the Euler-Lagrange residual
#
# From h we build L = -(x cross v) - h. Its velocity structure fixes the
# multipliers lambda, and the antisymmetrized Euler-Lagrange equation holds
# once the equations of motion are substituted.

# %%
from nambu3d import frenet
from nambu3d.mechanics import (
    el_residual,
    lagrange_multipliers,
    multiplier_flow_report,
    rot_L_check,
    vector_lagrangian_from_h,
)

L = vector_lagrangian_from_h(frenet.VECTOR_HAMILTONIAN)
for i, Li in enumerate(L, start=1):
    print(f"L{i} = {Li}")

# %%
for i, k in ((1, 2), (2, 3), (3, 1)):
    print(f"EL residual ({i},{k}) on shell:", el_residual(L, i, k, frenet.FIELD))

# %%
lam = lagrange_multipliers(L)
print("lambda =", lam.strings())
rep = multiplier_flow_report(lam, frenet.VECTOR_HAMILTONIAN, frenet.FIELD)
print("lambda_dot = s * rot(h) with s =", rep.constant)
print("rot(L) + lambda_dot on shell =", rot_L_check(L, lam, frenet.FIELD).strings())
