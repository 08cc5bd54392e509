"""Frame-operator deviation of minimizers: 1/2 for every odd-N minimizer at p = 1."""

from fplab import OptimizerSettings
from fplab.transitions import tightness_curve

rows = tightness_curve(1.0, [5, 7, 9, 11], OptimizerSettings(restarts=200, master_seed=0))
for n, ratio in rows:
    print(f"N={n:2d} deviation/N = {ratio:.6f}  (0.5/N = {0.5 / n:.6f})")

# above p = 2 the five-point minimizer is tight
print(tightness_curve(3.0, [5], OptimizerSettings(restarts=100, master_seed=0)))
