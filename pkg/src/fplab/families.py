"""
Special configurations: orthoplex-type, harmonic, the five-point families
Y(alpha) and Z(alpha), and the six-point configuration E.

Y(alpha) = {0, 0, pi/2 - alpha, pi/2, pi/2 + alpha}
Z(alpha) = {-alpha, -alpha, 0, alpha, alpha}
E        = {0, 0, pi/3, pi/3, 2pi/3, 2pi/3}
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .optimize import golden_section
from .potentials import AngleConfig, HALF_PI, as_config, canonicalize, config_distance, kernel_w

ALPHA_MAX = HALF_PI


class FamilyKind(str, enum.Enum):
    PERP = "perp"
    HARMONIC = "harmonic"
    Y = "y"
    Z = "z"
    E6 = "e6"
    CUSTOM = "custom"

    def __str__(self):
        return self.value


PARAMETRIC = (FamilyKind.Y, FamilyKind.Z)
_FIXED_N = {FamilyKind.Y: 5, FamilyKind.Z: 5, FamilyKind.E6: 6}


@dataclass(frozen=True)
class FamilyInstance:
    kind: FamilyKind
    n: int
    alpha: float | None = None

    def __post_init__(self):
        kind = FamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.n < 1:
            raise ValueError("n must be positive")
        need = _FIXED_N.get(kind)
        if need is not None and self.n != need:
            raise ValueError(f"{kind} requires n = {need}, got {self.n}")
        if kind in PARAMETRIC:
            if self.alpha is None:
                raise ValueError(f"{kind} requires alpha")
            if not (0.0 <= self.alpha <= ALPHA_MAX):
                raise ValueError(f"alpha must lie in [0, pi/2], got {self.alpha}")
        elif self.alpha is not None:
            raise ValueError(f"{kind} takes no alpha")

    @classmethod
    def of(cls, kind, n: int | None = None, alpha: float | None = None) -> FamilyInstance:
        kind = FamilyKind(kind)
        return cls(kind, n if n is not None else _FIXED_N.get(kind, 0), alpha)


def build(instance: FamilyInstance) -> AngleConfig:
    """Literal angle multiset of a family member, reduced mod pi."""
    kind, n, a = instance.kind, instance.n, instance.alpha
    if kind is FamilyKind.PERP:
        zeros = (n + 1) // 2
        return AngleConfig([0.0] * zeros + [HALF_PI] * (n - zeros))
    if kind is FamilyKind.HARMONIC:
        return AngleConfig(np.arange(n) * np.pi / n)
    if kind is FamilyKind.Y:
        return AngleConfig([0.0, 0.0, HALF_PI - a, HALF_PI, HALF_PI + a])
    if kind is FamilyKind.Z:
        return AngleConfig([-a, -a, 0.0, a, a])
    if kind is FamilyKind.E6:
        third = np.pi / 3
        return AngleConfig([0.0, 0.0, third, third, 2 * third, 2 * third])
    raise ValueError("a custom configuration has no construction rule")


def perp_value(n: int) -> float:
    # zeros and ones only: each block of m parallel vectors contributes m(m - 1)
    k = (n + 1) // 2
    return float(k * (k - 1) + (n - k) * (n - k - 1))


def closed_form_potential(instance: FamilyInstance, p: float) -> float:
    """
    Analytic p-frame potential of a family member.

    Raises
    ------
    NotImplementedError
        For custom configurations.
    """
    kind, n, a = instance.kind, instance.n, instance.alpha
    if kind is FamilyKind.PERP:
        return perp_value(n)
    if kind is FamilyKind.HARMONIC:
        j = np.arange(1, n)
        return float(n * np.sum(kernel_w(j * np.pi / n, p)))
    if kind is FamilyKind.Y:
        return 2.0 * (
            1.0 + 4.0 * kernel_w(HALF_PI - a, p) + 2.0 * kernel_w(a, p) + kernel_w(2.0 * a, p)
        )
    if kind is FamilyKind.Z:
        return 4.0 + 8.0 * kernel_w(a, p) + 8.0 * kernel_w(2.0 * a, p)
    if kind is FamilyKind.E6:
        return 6.0 + 24.0 * 2.0**-p
    raise NotImplementedError("no closed form for a custom configuration")


def _alpha_objective(kind: FamilyKind, p: float):
    n = _FIXED_N[kind]
    return lambda a: closed_form_potential(FamilyInstance(kind, n, min(max(a, 0.0), ALPHA_MAX)), p)


def _local_minima(kind: FamilyKind, p: float, tol: float, seeds: int, interior: bool):
    f = _alpha_objective(kind, p)
    grid = np.linspace(0.0, ALPHA_MAX, seeds + 1)
    vals = np.array([f(a) for a in grid])
    found = []
    for i in range(seeds + 1):
        left = vals[i - 1] if i > 0 else np.inf
        right = vals[i + 1] if i < seeds else np.inf
        if not (vals[i] <= left and vals[i] <= right):
            continue
        if interior and (i == 0 or i == seeds):
            continue
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, seeds)]
        x, fx = golden_section(f, lo, hi, tol)
        if interior:
            # a refinement that ran into the boundary is not an interior minimum
            if x <= grid[1] * 1e-3 or x >= ALPHA_MAX - grid[1] * 1e-3:
                continue
        else:
            for edge in (lo, hi):
                fe = f(edge)
                if fe < fx or (fe == fx and edge < x):
                    x, fx = edge, fe
        found.append((x, fx))
    return found


def best_alpha(kind, p: float, tol: float = 1e-12, seeds: int = 512):
    """
    Global minimizer of the family potential over alpha in ``[0, pi/2]``.

    Every local minimum of a ``seeds``-interval scan is refined by golden
    section to ``tol``; ties go to the smaller alpha.

    Returns
    -------
    (alpha_star, value)
    """
    kind = FamilyKind(kind)
    if kind not in PARAMETRIC:
        raise ValueError(f"{kind} has no alpha parameter")
    best = None
    for x, fx in _local_minima(kind, p, tol, seeds, interior=False):
        if best is None or fx < best[1] or (fx == best[1] and x < best[0]):
            best = (x, fx)
    return float(best[0]), float(best[1])


def interior_alpha(kind, p: float, tol: float = 1e-12, seeds: int = 512):
    """
    Lowest local minimum of the family potential strictly inside ``(0, pi/2)``.

    Y(0) is a relabeled orthoplex configuration, so the nondegenerate Y branch
    is this interior minimum rather than the global one. Returns ``None`` when
    the scan finds no interior minimum.
    """
    kind = FamilyKind(kind)
    if kind not in PARAMETRIC:
        raise ValueError(f"{kind} has no alpha parameter")
    found = _local_minima(kind, p, tol, seeds, interior=True)
    if not found:
        return None
    x, fx = min(found, key=lambda t: (t[1], t[0]))
    return float(x), float(fx)


def _gap_alphas(angles: np.ndarray):
    # candidate alphas read off the pairwise gaps of the configuration
    d = np.abs(angles[:, None] - angles[None, :]).ravel()
    d = np.minimum(d, np.pi - d)
    cands = np.concatenate((d, HALF_PI - d, 0.5 * d))
    cands = cands[(cands >= 0.0) & (cands <= ALPHA_MAX)]
    return np.unique(cands)


def classify(config, tol: float = 1e-6) -> FamilyInstance:
    """
    Name the family a configuration belongs to, up to rotation, permutation and sign.

    Families are tried in the order perp, harmonic, E, Y, Z; for Y and Z the
    parameter is fitted from the configuration's pairwise gaps. Anything else
    is custom.
    """
    cfg = canonicalize(as_config(config))
    n = cfg.n
    for kind in (FamilyKind.PERP, FamilyKind.HARMONIC):
        if config_distance(cfg, build(FamilyInstance(kind, n))) <= tol:
            return FamilyInstance(kind, n)
    if n == 6 and config_distance(cfg, build(FamilyInstance(FamilyKind.E6, 6))) <= tol:
        return FamilyInstance(FamilyKind.E6, 6)
    if n == 5:
        for kind in PARAMETRIC:
            best = None
            for a in _gap_alphas(cfg.angles):
                dist = config_distance(cfg, build(FamilyInstance(kind, 5, float(a))))
                if dist <= tol and (best is None or dist < best[0]):
                    best = (dist, float(a))
            if best is not None:
                return FamilyInstance(kind, 5, best[1])
    return FamilyInstance(FamilyKind.CUSTOM, n)


def family_value(kind, p: float, n: int | None = None, tol: float = 1e-14) -> float:
    """
    Potential of the best nondegenerate member of a family.

    Parametric families use :func:`interior_alpha` and return ``inf`` when no
    interior minimum exists.
    """
    kind = FamilyKind(kind)
    if kind in PARAMETRIC:
        hit = interior_alpha(kind, p, tol)
        return math.inf if hit is None else hit[1]
    return closed_form_potential(FamilyInstance.of(kind, n), p)
