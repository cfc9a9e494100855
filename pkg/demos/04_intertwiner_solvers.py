"""Solve for the vertex and boundary intertwiners numerically.

Both operators are reconstructed from their exchange relations in
truncated number bases.  The products conserve simple linear charges, so
the unknowns are restricted to charge sectors that close inside the
truncation box; every equation kept is then an exact relation of the
untruncated model, and the nullspace of the resulting linear system is
one-dimensional.
"""

import numpy as np

from qoslab.focknum import solve_k, solve_r
from qoslab.laurent import P_Q2

out = solve_r(dim=3, q_value=0.6)
print("three-oscillator vertex map, box 3^3")
print(f"  nullspace dimension : {out['nullspace_dim']}")
print(f"  unknowns / equations: {out['n_unknowns']} / {out['n_equations']}")
print(f"  direct-sum residual : {out['residual_direct_sum']:.3e}")
print(f"  tensor-form residual: {out['residual_tensor']:.3e}")
print(f"  condition number    : {out['condition_number']:.3f}")

vac = out["vertex"][0, 0]
print(f"  vacuum element      : {vac}")

print()
out = solve_k(dim=2, q_value=0.6)
print("boundary exchange operator, box 2^4")
print(f"  nullspace dimension : {out['nullspace_dim']}")
print(f"  residual            : {out['residual']:.3e}")
K = out["operator"]
nz = np.count_nonzero(np.abs(K) > 1e-14)
print(f"  nonzero elements    : {nz} of {K.size}")

print()
ctrl = solve_k(dim=2, q_value=0.6, boundary_param=P_Q2)
print("flavour control (boundary oscillators set to the bulk flavour):")
print(f"  nullspace dimension : {ctrl['nullspace_dim']} (no intertwiner)")
