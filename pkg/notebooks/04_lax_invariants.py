# %% [markdown]
# # Lax pair and trace invariants
#
# A(x) evolves by a commutator with a constant B. The fitted constant c in
# A' = c [A, B] is -1/2 for this (A, B); the trace invariants are conserved
# regardless of the scaling.

# %%
from nambu3d import frenet
from nambu3d.lax import closed_form_invariants, frenet_lax_pair, hamiltonian_relations, lax_fit, trace_invariant
from nambu3d.mechanics import fit_scalar, on_shell_derivative

pair = frenet_lax_pair()
print("c =", lax_fit(pair, frenet.FIELD).constant)

# %%
for k, I in enumerate(closed_form_invariants(), start=1):
    T = trace_invariant(pair.A, k)
    factor = fit_scalar([T], [I]).constant
    print(f"Tr(A^{k})/{k} = {T}   = {factor} * I{k};  D_t I{k} = {on_shell_derivative(I, frenet.FIELD)}")

# %%
for rel in hamiltonian_relations(frenet.PAIR):
    print(("pass " if rel.passed else "FAIL ") + rel.name)
