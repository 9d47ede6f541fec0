"""Second-order convergence of the symmetric Trotter splitting.

Doubling the number of segments m should cut the state error by about four.
A forward step followed by its backward inverse should return the input
exactly.
"""

import numpy as np

from otocising import IsingModel, basis_state, exact_evolve, trotter_evolve

model = IsingModel.create(4, 1.5)
psi = basis_state(4, 0)
reference = exact_evolve(model.eig, psi, 0.5).amplitudes
previous = None
for m in (4, 8, 16, 32, 64):
    err = np.linalg.norm(trotter_evolve(model.terms, psi, 0.5, m).amplitudes - reference)
    ratio = "" if previous is None else f"  ratio {previous / err:.3f}"
    print(f"m = {m:3d}: error {err:.3e}{ratio}")
    previous = err

forward = trotter_evolve(model.terms, psi, 0.5, 10)
back = trotter_evolve(model.terms, forward, 0.5, 10, "backward")
print(f"echo error: {np.max(np.abs(back.amplitudes - psi.amplitudes)):.1e}")
