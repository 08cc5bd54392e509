"""
p-sweeps of the minimal potential, numerical derivatives and phase-transition
localization.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .families import FamilyInstance, FamilyKind, classify, family_value
from .optimize import OptimizerFailure, OptimizerSettings, minimize_fp
from .potentials import AngleConfig, frame_operator_deviation

log = logging.getLogger(__name__)

CROSSING = "crossing-bisection"
DERIVATIVE_JUMP = "derivative-jump"


class BracketError(ValueError):
    """The bracket does not contain a sign change."""


@dataclass
class SweepRecord:
    p: float
    f_min: float
    family: FamilyInstance
    alpha: float | None = None
    dfdp: float | None = None
    custom: bool = False
    failed: bool = False
    config: AngleConfig | None = field(default=None, repr=False)

    @property
    def y_alpha(self) -> float:
        return self.alpha if self.family.kind is FamilyKind.Y else math.nan

    @property
    def z_alpha(self) -> float:
        return self.alpha if self.family.kind is FamilyKind.Z else math.nan


@dataclass(frozen=True)
class TransitionReport:
    p_star: float
    left_family: FamilyKind
    right_family: FamilyKind
    method: str
    precision: float

    def __post_init__(self):
        if not self.precision > 0:
            raise ValueError("precision must be positive")
        # a derivative jump can separate two unnamed (custom) phases
        if self.method == CROSSING and self.left_family is self.right_family:
            raise ValueError("a crossing needs two different families")


def numeric_derivative(f, p: float, d: float = 1e-4) -> float:
    """Symmetric difference ``(f(p + d) - f(p - d)) / 2d``."""
    if not d > 0:
        raise ValueError("step must be positive")
    hi, lo = f(p + d), f(p - d)
    if not (math.isfinite(hi) and math.isfinite(lo)):
        raise ArithmeticError(f"non-finite value near p = {p}")
    return (hi - lo) / (2.0 * d)


def locate_crossing(family_a, family_b, p_lo: float, p_hi: float, tol: float = 1e-12, n: int = 5) -> TransitionReport:
    """
    Exponent where the best members of two families have equal potential.

    Bisects the sign of ``value_a(p) - value_b(p)`` until the bracket is
    narrower than ``tol``. Parametric families are optimized over alpha to
    ``1e-14``; ``n`` sizes the perp and harmonic families.

    Raises
    ------
    BracketError
        If the gap has the same sign at both ends.
    """
    ka, kb = FamilyKind(family_a), FamilyKind(family_b)
    if ka is kb:
        raise ValueError("need two different families")

    def gap(p):
        return family_value(ka, p, n) - family_value(kb, p, n)

    g_lo, g_hi = gap(p_lo), gap(p_hi)
    if g_lo == 0:
        p_hi = p_lo
    elif g_hi == 0:
        p_lo = p_hi
    elif np.sign(g_lo) == np.sign(g_hi):
        raise BracketError(f"no sign change of {ka}-{kb} gap on [{p_lo}, {p_hi}]")
    while p_hi - p_lo > tol:
        mid = 0.5 * (p_lo + p_hi)
        g = gap(mid)
        if g == 0:
            p_lo = p_hi = mid
        elif np.sign(g) == np.sign(g_lo):
            p_lo = mid
        else:
            p_hi = mid
    # the family below the crossing is the one with the lower value there
    left, right = (ka, kb) if g_lo < 0 else (kb, ka)
    return TransitionReport(0.5 * (p_lo + p_hi), left, right, CROSSING, tol)


def sweep(n: int, p_grid, settings: OptimizerSettings | None = None, classify_tol: float = 1e-5) -> list[SweepRecord]:
    """
    Minimize the potential at every exponent of ``p_grid`` and label the minimizer.

    Interior records get ``dfdp`` from symmetric differences of neighbouring
    minima. A point whose optimizer fails is recorded with ``nan`` values and
    ``failed=True``.
    """
    grid = np.asarray(p_grid, dtype=float)
    if grid.size == 0 or np.any(np.diff(grid) <= 0) or np.any(grid <= 0):
        raise ValueError("p_grid must be nonempty, strictly increasing and positive")
    records = []
    for p in grid:
        try:
            res = minimize_fp(n, float(p), settings)
        except OptimizerFailure as exc:
            log.warning("sweep point p=%g failed: %s", p, exc)
            records.append(SweepRecord(float(p), math.nan, FamilyInstance(FamilyKind.CUSTOM, n), custom=True, failed=True))
            continue
        fam = classify(res.config, classify_tol)
        records.append(
            SweepRecord(
                p=float(p),
                f_min=res.value,
                family=fam,
                alpha=fam.alpha,
                custom=fam.kind is FamilyKind.CUSTOM,
                config=res.config,
            )
        )
    fill_derivatives(records)
    return records


def fill_derivatives(records: list[SweepRecord]) -> None:
    # symmetric differences over the (possibly nonuniform) grid
    for i in range(1, len(records) - 1):
        lo, hi = records[i - 1], records[i + 1]
        d = (hi.f_min - lo.f_min) / (hi.p - lo.p)
        records[i].dfdp = d if math.isfinite(d) else None


def default_jump_threshold(records: list[SweepRecord]) -> float:
    """Five times the median absolute neighbour difference of ``dfdp``, floored at ``1e-6``."""
    der = np.array([r.dfdp for r in records if r.dfdp is not None], dtype=float)
    if der.size < 2:
        return 1e-6
    return max(5.0 * float(np.median(np.abs(np.diff(der)))), 1e-6)


def detect_transitions(records: list[SweepRecord], jump_threshold: float | None = None) -> list[TransitionReport]:
    """
    Flag grid intervals where ``dfdp`` jumps or the minimizer family changes.

    Adjacent flagged intervals are merged into one report placed at the centre
    of the run, with precision equal to the grid spacing there.
    """
    if len(records) < 3:
        raise ValueError("need at least three records")
    thr = default_jump_threshold(records) if jump_threshold is None else jump_threshold
    if not thr > 0:
        raise ValueError("jump_threshold must be positive")
    flagged = []
    for i in range(len(records) - 1):
        a, b = records[i], records[i + 1]
        jump = a.dfdp is not None and b.dfdp is not None and abs(b.dfdp - a.dfdp) > thr
        changed = not (a.failed or b.failed) and a.family.kind is not b.family.kind
        flagged.append(jump or changed)

    reports = []
    i = 0
    while i < len(flagged):
        if not flagged[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(flagged) and flagged[j + 1]:
            j += 1
        left, right = records[i], records[j + 1]
        mids = [0.5 * (records[k].p + records[k + 1].p) for k in (i, j)]
        spacing = max(records[k + 1].p - records[k].p for k in range(i, j + 1))
        reports.append(
            TransitionReport(0.5 * (mids[0] + mids[1]), left.family.kind, right.family.kind, DERIVATIVE_JUMP, spacing)
        )
        i = j + 1
    return reports


def tightness_curve(p: float, n_list, settings: OptimizerSettings | None = None) -> list[tuple[int, float]]:
    """
    Deviation of each computed minimizer's frame operator from ``(N/2) I``, divided by ``N``.

    The asymptotic statement concerns ``0 < p < 2``, but the diagnostic is
    defined for every ``p > 0`` (e.g. it is 0 wherever the minimizer is tight).
    """
    if not (p > 0 and math.isfinite(p)):
        raise ValueError(f"p must be positive and finite, got {p}")
    out = []
    for n in n_list:
        res = minimize_fp(int(n), p, settings)
        out.append((int(n), frame_operator_deviation(res.config).deviation / n))
    return out
