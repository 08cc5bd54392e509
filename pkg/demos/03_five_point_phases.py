"""
Phase diagram of five vectors around p = 1.78.

The transition exponents come from the family closed forms; the sweep then
checks that the optimizer agrees with the families on a grid and writes a
table that pgfplots or gnuplot can plot directly.
"""

from pathlib import Path

import numpy as np

from fplab import OptimizerSettings, locate_crossing, sweep
from fplab.families import FamilyKind, best_alpha
from fplab.tables import sweep_table, write_text
from fplab.transitions import detect_transitions

K = FamilyKind

p1 = locate_crossing(K.PERP, K.Y, 1.7, 1.8, 1e-12)
p2 = locate_crossing(K.Y, K.Z, 1.778, 1.79, 1e-12)
p3 = locate_crossing(K.Z, K.HARMONIC, 1.95, 2.05, 1e-12)
for rep in (p1, p2, p3):
    print(f"{rep.left_family} -> {rep.right_family} at p = {rep.p_star:.14f}")

for p in (1.78, 1.9, 2.0):
    for kind in (K.Y, K.Z):
        a, v = best_alpha(kind, p)
        print(f"p={p} {kind}: alpha*={a:.6f} value={v:.12f}")

grid = np.linspace(1.75, 2.05, 31)
records = sweep(5, grid, OptimizerSettings(restarts=150, master_seed=0))
for r in records[::5]:
    print(f"p={r.p:.3f} f_min={r.f_min:.10f} family={r.family.kind.value}")
for rep in detect_transitions(records):
    print("jump:", rep)

out = Path("fp5_sweep.dat")
write_text(out, sweep_table(records))
print("wrote", out)
