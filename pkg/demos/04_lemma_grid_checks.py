"""Dense-grid checks of the auxiliary inequalities behind the odd-N minimum."""

import numpy as np

from fplab.lemmas import SUITES, GridSpec, cubic_bound, l_func, run_lemma_suite
from fplab.potentials import LOG3_LOG2

grid = GridSpec(points_per_axis=300)
for lemma_id in SUITES:
    rep = run_lemma_suite(lemma_id, grid)
    print(f"{lemma_id:6s} {'pass' if rep.passed else 'FAIL'} worst margin {rep.worst_margin: .3e} at {rep.worst_point}")

# L >= 2 holds up to log3/log2 and breaks soon after
for p in (1.4, LOG3_LOG2, 1.7, 1.9):
    a = np.linspace(0, np.pi / 3, 1001)
    print(f"p={p:.4f}: min L = {np.min(l_func(a, p)):.6f}")

print("cubic bound at 1, 1.5, 1.73:", cubic_bound(1.0), cubic_bound(1.5), cubic_bound(1.73))
