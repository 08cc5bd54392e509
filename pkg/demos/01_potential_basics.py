"""Evaluate the p-frame potential of a few named configurations and compare kernels."""

import numpy as np

from fplab import AngleConfig, FamilyInstance, FamilyKind, build, frame_potential, kernel_v, kernel_w, theta_p
from fplab.potentials import LOG3_LOG2

# five vectors: three along e1, two along e2
perp5 = build(FamilyInstance(FamilyKind.PERP, 5))
harm5 = build(FamilyInstance(FamilyKind.HARMONIC, 5))
print("X5 perp angles:", perp5.angles)
print("X5 harmonic angles:", np.round(harm5.angles, 4))

for p in (0.5, 1.0, LOG3_LOG2, 2.0, 3.0):
    print(f"p={p:.4f}  perp {frame_potential(perp5, p):8.4f}  harmonic {frame_potential(harm5, p):8.4f}")

# the tent kernel sits below |cos|^p on [0, theta_p]
for p in (1.0, 1.3, LOG3_LOG2):
    tp = theta_p(p)
    t = np.linspace(0, min(tp, np.pi), 2000)
    gap = np.min(kernel_w(t, p) - kernel_v(t))
    print(f"p={p:.4f} theta_p={tp:.6f}  min(W - V) on [0, theta_p] = {gap:.2e}")

# rotation, permutation and sign flips leave the potential alone
cfg = AngleConfig([0.1, 0.7, 1.9, 2.5])
moved = AngleConfig([2.5 + 0.3 + np.pi, 0.1 + 0.3, 1.9 + 0.3, 0.7 + 0.3])
print(frame_potential(cfg, 1.7), frame_potential(moved, 1.7))
