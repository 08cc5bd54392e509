"""
Angle configurations on the circle and their p-frame potentials.

A unit vector in the plane is identified with its angle, and ``x`` and ``-x``
give the same contribution to every potential here, so angles are stored
modulo pi.

Public functions
----------------
- :func:`kernel_w`, :func:`kernel_v`
- :func:`frame_potential`, :func:`linearized_potential`, :func:`pfp_counting`
- :func:`theta_c`, :func:`theta_p`
- :func:`canonicalize`, :func:`equivalent`, :func:`config_distance`
- :func:`frame_operator_deviation`
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

HALF_PI = 0.5 * np.pi
LOG3_LOG2 = math.log(3.0) / math.log(2.0)


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


@dataclass(frozen=True, eq=False)
class AngleConfig:
    """An ordered multiset of ``N`` angles, reduced to ``[0, pi)``."""

    angles: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=np.float64).ravel()
        if a.size == 0:
            raise ValueError("a configuration needs at least one angle")
        if not np.all(np.isfinite(a)):
            raise ValueError("angles must be finite")
        a = reduce_angles(a)
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)

    @property
    def n(self) -> int:
        return int(self.angles.size)

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.angles.tolist())

    def __eq__(self, other):
        if not isinstance(other, AngleConfig):
            return NotImplemented
        return np.array_equal(self.angles, other.angles)

    def __hash__(self):
        return hash(self.angles.tobytes())

    def __repr__(self):
        body = ", ".join(f"{t:.6g}" for t in self.angles)
        return f"AngleConfig([{body}])"

    def rotated(self, phi: float) -> AngleConfig:
        return AngleConfig(self.angles + phi)

    def unit_vectors(self) -> np.ndarray:
        """Return the ``(N, 2)`` array of vectors ``(cos t, sin t)``."""
        return np.column_stack((np.cos(self.angles), np.sin(self.angles)))


def reduce_angles(a) -> np.ndarray:
    """Reduce angles to ``[0, pi)``; a rounded-up ``pi`` maps to 0."""
    r = np.mod(np.asarray(a, dtype=np.float64), np.pi)
    r[r >= np.pi] = 0.0
    return r + 0.0


def as_config(x) -> AngleConfig:
    if isinstance(x, AngleConfig):
        return x
    return AngleConfig(np.asarray(x, dtype=np.float64))


def _check_finite(name, value):
    if not np.all(np.isfinite(value)):
        raise ValueError(f"{name} must be finite, got {value!r}")


# offsets from orthogonality below a few ulps of pi are rounding residue of
# angle arithmetic; for small p their p-th power would be far above it
ORTH_EPS = 16 * np.finfo(np.float64).eps


def _orth_offset(delta):
    # |(delta mod pi) - pi/2|, the angular distance to orthogonality.
    # |cos delta| = sin(offset) is exact at delta = pi/2 (offset 0), which
    # keeps the p < 1 cusp at orthogonality free of cos(pi/2) round-off.
    u = np.abs(np.mod(delta, np.pi) - HALF_PI)
    return np.where(u < ORTH_EPS, 0.0, u)


def kernel_w(theta, p):
    """
    Pairwise kernel ``|cos theta|**p``.

    Parameters
    ----------
    theta : float or array_like
        Angle(s) in radians.
    p : float
        Positive exponent.

    Returns
    -------
    float or ndarray
        Values in ``[0, 1]``, pi-periodic in ``theta``.
    """
    _check_finite("theta", theta)
    _check_finite("p", p)
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    out = np.sin(_orth_offset(np.asarray(theta, dtype=np.float64))) ** p
    return out if np.ndim(out) else float(out)


def kernel_v(theta):
    """Tent kernel ``(2/pi) |(theta mod pi) - pi/2|``, the linear comparison for :func:`kernel_w`."""
    _check_finite("theta", theta)
    out = _orth_offset(np.asarray(theta, dtype=np.float64)) / HALF_PI
    return out if np.ndim(out) else float(out)


def _pair_offsets(angles: np.ndarray) -> np.ndarray:
    i, j = np.triu_indices(angles.size, k=1)
    return _orth_offset(angles[i] - angles[j])


def frame_potential(config, p: float) -> float:
    """
    p-frame potential ``sum_{k != l} |cos(t_k - t_l)|**p`` over ordered pairs.

    Parameters
    ----------
    config : AngleConfig or array_like
        Angles in radians.
    p : float
        Positive exponent.

    Returns
    -------
    float
    """
    cfg = as_config(config)
    if p <= 0 or not np.isfinite(p):
        raise ValueError(f"p must be positive and finite, got {p}")
    if cfg.n < 2:
        return 0.0
    return 2.0 * float(np.sum(np.sin(_pair_offsets(cfg.angles)) ** p))


def linearized_potential(config) -> float:
    """Pairwise sum of the tent kernel over ordered pairs."""
    cfg = as_config(config)
    if cfg.n < 2:
        return 0.0
    return 2.0 * float(np.sum(_pair_offsets(cfg.angles))) / HALF_PI


def pfp_counting(config, p: float) -> float:
    """
    Probabilistic p-frame potential of the normalized counting measure.

    The double integral includes the diagonal, so this is
    ``(frame_potential + N) / N**2``.
    """
    cfg = as_config(config)
    return (frame_potential(cfg, p) + cfg.n) / cfg.n**2


def theta_c(p: float) -> float:
    """Peak of ``cos(t)**(p-1) sin(t)`` on ``[0, pi/2]``, defined for ``1 <= p <= 2``."""
    if not (1.0 <= p <= 2.0):
        raise DomainError(f"theta_c needs 1 <= p <= 2, got {p}")
    return float(np.arccos(np.sqrt((p - 1.0) / p)))


def theta_p(p: float, grid_points: int = 10_000, tol: float = 1e-12) -> float:
    """
    Largest angle ``t`` with ``kernel_v <= kernel_w`` on all of ``[0, t]``.

    The sign of ``kernel_w - kernel_v`` is scanned on ``grid_points`` points per
    period and the first sign change is refined by bisection to ``tol``.
    Returns ``pi`` when the inequality holds on the whole period.
    """
    if not (0.0 < p <= 2.0):
        raise DomainError(f"theta_p needs 0 < p <= 2, got {p}")
    grid = np.linspace(0.0, np.pi, grid_points + 1)
    gap = kernel_w(grid, p) - kernel_v(grid)
    bad = np.flatnonzero(gap < 0.0)
    if bad.size == 0:
        return float(np.pi)
    lo, hi = grid[bad[0] - 1], grid[bad[0]]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if kernel_w(mid, p) - kernel_v(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    return float(lo)


def _representations(angles: np.ndarray) -> Iterable[np.ndarray]:
    """Sorted angle vectors for every rotation putting one angle at 0, with and without reflection."""
    for anchor in angles:
        shifted = angles - anchor
        yield np.sort(reduce_angles(shifted))
        yield np.sort(reduce_angles(-shifted))


def canonicalize(config) -> AngleConfig:
    """
    Canonical representative under rotation, permutation and reflection.

    Every rotation that places one angle at 0 is combined with the reflection
    ``t -> -t mod pi``; the lexicographically smallest sorted vector wins.
    """
    cfg = as_config(config)
    best = None
    for rep in _representations(cfg.angles):
        if best is None or tuple(rep) < tuple(best):
            best = rep
    return AngleConfig(best)


def _wrap(d):
    return np.mod(d + HALF_PI, np.pi) - HALF_PI


def config_distance(a, b) -> float:
    """
    Bottleneck distance between the equivalence classes of two configurations.

    Every representation of ``a`` (and, symmetrically, of ``b``) is matched
    against the canonical form of the other under all cyclic shifts, with the
    best common rotation removed; distances are taken on the circle mod pi.
    """
    a, b = as_config(a), as_config(b)
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    return min(_one_sided_distance(a, b), _one_sided_distance(b, a))


def _one_sided_distance(a: AngleConfig, b: AngleConfig) -> float:
    target = canonicalize(b).angles
    best = np.inf
    for rep in _representations(a.angles):
        for s in range(rep.size):
            d = _wrap(np.roll(rep, s) - target)
            err = 0.5 * (d.max() - d.min())
            if err < best:
                best = err
    return float(best)


def equivalent(a, b, tol: float = 1e-9) -> bool:
    """
    Whether two configurations agree up to rotation, permutation and sign flips.

    With ``tol == 0`` this is exact equality of canonical forms; otherwise the
    bottleneck distance of :func:`config_distance` must not exceed ``tol``.
    """
    a, b = as_config(a), as_config(b)
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    if tol == 0:
        return canonicalize(a) == canonicalize(b)
    return config_distance(a, b) <= tol


@dataclass(frozen=True)
class FrameOperatorSummary:
    gram_2x2: np.ndarray
    deviation: float
    frobenius: float


def frame_operator_deviation(config) -> FrameOperatorSummary:
    """
    Frame operator ``X X^T`` and its distance to ``(N/2) I``.

    ``deviation`` is the spectral-norm distance; the Frobenius distance is
    reported alongside.
    """
    cfg = as_config(config)
    x = cfg.unit_vectors()
    gram = x.T @ x
    diff = gram - 0.5 * cfg.n * np.eye(2)
    dev = float(np.max(np.abs(np.linalg.eigvalsh(diff))))
    return FrameOperatorSummary(gram_2x2=gram, deviation=dev, frobenius=float(np.linalg.norm(diff)))
