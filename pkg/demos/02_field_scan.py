"""Locate the dynamical transition by scanning the quench field.

For each g on a grid we run a 9-spin quench and record the long-time average
of F_R. The average is large in the ordered phase and drops to roughly zero
past the critical field. The estimate is the first g where it falls below
0.05. The ANNNI chain (next-nearest coupling Delta = 0.5) shows the
transition pushed to a larger field.
"""

import numpy as np

from otocising import QuenchSpec, estimate_critical_point, scan_field

grid = np.round(np.arange(1, 25) * 0.1, 10)
for label, base in (("TFIC", QuenchSpec.tfic(9, 0.0)), ("ANNNI", QuenchSpec.annni(9, 0.0))):
    curve = scan_field(base, grid, workers=4)
    print(label)
    for g, f_bar in zip(curve.g_values, curve.f_bar_values):
        print(f"  g = {g:3.1f}  F_bar = {f_bar:+.3f}  {'#' * int(max(f_bar, 0) * 40)}")
    cp = estimate_critical_point(curve)
    print(f"  estimated g_c = {cp.g:.3f}" + ("" if cp.crossed else " (threshold not crossed)") + "\n")
