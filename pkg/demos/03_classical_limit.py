"""Tour of the classical (Poisson) limit of the lattice.

Derives the bracket coefficients from the quantum commutators, checks the
involution of the spectral-determinant coefficients on the torus and on
the mirror-identified torus, counts Newton-polygon genera, and runs the
numeric refactorization map with its identification and symplecticity
statements.
"""

import numpy as np

from qoslab import classical
from qoslab.laurent import P_Q, P_Q2

for param, tag in ((P_Q, "short"), (P_Q2, "long")):
    spec = classical.derive_bracket(param)
    print(f"{tag} bracket: {{k, a+}} = {spec['alpha']} k a+,  "
          f"{{a+, a-}} = {spec['beta']} k k'")

print()
print("spectral determinant on the 1 x 1 lattice:")
for nm, coeff in sorted(classical.korepanov_det(1, 1).items()):
    print(f"  J[{nm}] = {coeff}")

print()
for mirror in (False, True):
    rep = classical.check_involution(2, 2, mirror=mirror)
    print(f"{rep.name:20s} passed={rep.passed} "
          f"({rep.wall_time_ms:.0f} ms)")
rep = classical.check_involution(2, 2, mirror=True, control=True)
print(f"{rep.name:20s} passed={rep.passed}  {rep.detail}")

print()
for nm in ((2, 2), (2, 3), (3, 3)):
    rep = classical.genus_check(*nm)
    print(f"genus {nm}: {rep.detail}")

print()
rng = np.random.default_rng(42)
point = {lbl: classical.random_phase_point(rng)
         for lbl in classical._CORNER_LABELS}
primed, res = classical.refactorize(point)
print(f"refactorization at a random point: residual {res:.3e}")
print(f"  o1  -> {np.round(primed['o1'], 6)}")
print(f"  oa  -> {np.round(primed['oa'], 6)}")

for rep in (classical.check_statement_3_1(n_points=5),
            classical.check_statement_3_2(n_points=2),
            classical.check_variable_change_demo()):
    print(f"{rep.name:18s} passed={rep.passed} residual={rep.residual:.3e}")
