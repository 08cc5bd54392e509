"""Multi-start minimization reproduces (N-1)^2/2 for odd N and small p."""

from fplab import OptimizerSettings, classify, equivalent, minimize_fp
from fplab.families import FamilyInstance, FamilyKind, build
from fplab.potentials import LOG3_LOG2

settings = OptimizerSettings(restarts=200, master_seed=0)

for n in (3, 5, 7):
    target = (n - 1) ** 2 / 2
    perp = build(FamilyInstance(FamilyKind.PERP, n))
    for p in (0.5, 1.0, 1.5):
        res = minimize_fp(n, p, settings)
        print(f"N={n} p={p}: value {res.value!r} (target {target}), X_perp: {equivalent(res.config, perp, 1e-5)}")

# at the right end of the range the three-point problem has two minimizers
res = minimize_fp(3, LOG3_LOG2, settings)
print("N=3 at p=log3/log2:", res.value, classify(res.config).kind.value)
print("harmonic value there:", 6 * 2.0**-LOG3_LOG2)
