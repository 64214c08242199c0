# %% [markdown]
# # Numerical conservation along RK4 trajectories
#
# The symbolic invariants should drift only at round-off level along a
# fixed-step RK4 run, and the Jacobian determinant of the flow map should
# stay at 1 (Liouville).

# %%
import numpy as np

from nambu3d import frenet
from nambu3d.integrate import exact_linear_flow, integrate, invariant_drift, volume_drift
from nambu3d.lax import closed_form_invariants

traj = integrate(frenet.FIELD, (1.0, 0.0, 0.0), dt=1e-3, T=100.0)
for k, drift in enumerate(invariant_drift(traj, closed_form_invariants()), start=1):
    print(f"I{k} relative drift: {drift:.2e}")
print("max |x|:", np.linalg.norm(traj.x, axis=1).max())

# %%
vol = volume_drift(frenet.FIELD, (1.0, 0.0, 0.0), dt=1e-3, T=100.0)
print(f"max |det J - 1|: {vol.max_drift:.2e}")

# %% [markdown]
# Halving the step divides the endpoint error by about 16.

# %%
exact = exact_linear_flow(frenet.MATRIX, (1.0, 0.0, 0.0), 10.0)
prev = None
for dt in (0.2, 0.1, 0.05, 0.025):
    err = np.abs(integrate(frenet.FIELD, (1.0, 0.0, 0.0), dt, 10.0).x[-1] - exact).max()
    print(f"dt = {dt:<6} error = {err:.3e}" + ("" if prev is None else f"  ratio = {prev / err:.2f}"))
    prev = err
