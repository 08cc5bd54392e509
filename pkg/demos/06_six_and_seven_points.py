"""Derivative jumps of the minimal potential for N = 6 and N = 7."""

import numpy as np

from fplab import OptimizerSettings, classify, minimize_fp, sweep
from fplab.transitions import detect_transitions

six = sweep(6, 1.8 + 0.04 * np.arange(61), OptimizerSettings(restarts=60, master_seed=0))
for rep in detect_transitions(six):
    print(f"N=6 jump near p = {rep.p_star:.3f}: {rep.left_family} -> {rep.right_family}")

res = minimize_fp(6, 3.0, OptimizerSettings(restarts=100, master_seed=0))
print("N=6, p=3:", res.value, classify(res.config).kind.value, "closed form", 6 + 24 * 2.0**-3)

seven = sweep(7, 1.7 + 0.01 * np.arange(31), OptimizerSettings(restarts=100, master_seed=0))
for rep in detect_transitions(seven):
    print(f"N=7 jump near p = {rep.p_star:.3f}: {rep.left_family} -> {rep.right_family}")
