"""
Auxiliary one-variable functions behind the odd-N optimality argument, and
dense-grid checks of the inequalities they satisfy.

Each suite evaluates an inequality ``margin >= 0`` on a grid and reports the
worst margin. This is regression testing by sampling, not a certified proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .potentials import HALF_PI, LOG3_LOG2, DomainError, kernel_w

SLACK = 1e-12  # endpoint slack for domain checks
P_MAX_GG = 1.73


def _cos_p(x, p):
    return kernel_w(x, p)


def _sin_p(x, p):
    # direct sine keeps relative accuracy for small angles
    return np.abs(np.sin(np.asarray(x, dtype=float))) ** p


def _in(x, lo, hi):
    x = np.asarray(x, dtype=float)
    return bool(np.all((x >= lo - SLACK) & (x <= hi + SLACK)))


def _scalar(out):
    return out if np.ndim(out) else float(out)


def g_func(theta, p):
    """``cos(t)**(p-1) * sin(t)`` on ``[0, pi/2]`` for ``p >= 1``."""
    if not _in(theta, 0.0, HALF_PI):
        raise DomainError("g_func needs theta in [0, pi/2]")
    if p < 1:
        raise DomainError("g_func needs p >= 1")
    t = np.clip(np.asarray(theta, dtype=float), 0.0, HALF_PI)
    # cos via sin of the complement is exactly 0 at pi/2
    return _scalar(np.sin(HALF_PI - t) ** (p - 1.0) * np.sin(t))


def k_func(theta, nu, p):
    """``cos^p(t) + cos^p(pi/2 - nu - t)`` for ``0 <= t <= pi/2 - nu``."""
    nu_a = np.asarray(nu, dtype=float)
    if not _in(nu_a, 0.0, HALF_PI):
        raise DomainError("k_func needs nu in [0, pi/2]")
    if not _in(np.asarray(theta, dtype=float) + nu_a, 0.0, HALF_PI) or not _in(theta, 0.0, HALF_PI):
        raise DomainError("k_func needs 0 <= theta <= pi/2 - nu")
    if not 1.0 <= p <= 2.0:
        raise DomainError("k_func needs 1 <= p <= 2")
    return _scalar(_cos_p(theta, p) + _cos_p(HALF_PI - nu_a - theta, p))


def l_func(alpha, p):
    """``1 + 2 sin^p(a/2) + cos^p(a)`` for ``a`` in ``[0, pi/3]``."""
    if not _in(alpha, 0.0, np.pi / 3):
        raise DomainError("l_func needs alpha in [0, pi/3]")
    a = np.asarray(alpha, dtype=float)
    return _scalar(1.0 + 2.0 * _sin_p(0.5 * a, p) + _cos_p(a, p))


def p_func(alpha, p):
    """``cos^p(a) + cos^p(2pi/3 - a)`` for ``a`` in ``[pi/3, pi/2]``."""
    if not _in(alpha, np.pi / 3, HALF_PI):
        raise DomainError("p_func needs alpha in [pi/3, pi/2]")
    a = np.asarray(alpha, dtype=float)
    return _scalar(_cos_p(a, p) + _cos_p(2.0 * np.pi / 3 - a, p))


def r_func(rho, alpha, p):
    """``sin^p(r) + sin^p(a - r)`` for ``0 <= a <= pi/3`` and ``0 <= r <= a/2``."""
    a = np.asarray(alpha, dtype=float)
    r = np.asarray(rho, dtype=float)
    if not _in(a, 0.0, np.pi / 3):
        raise DomainError("r_func needs alpha in [0, pi/3]")
    if not (_in(r, 0.0, np.inf) and _in(0.5 * a - r, 0.0, np.inf)):
        raise DomainError("r_func needs 0 <= rho <= alpha/2")
    return _scalar(_sin_p(r, p) + _sin_p(a - r, p))


def eps_sum(eps, p) -> float:
    """Sum of ``sin^p`` over three nonnegative angles that add up to ``pi/2``."""
    e = np.asarray(eps, dtype=float)
    if e.shape != (3,) or np.any(e < 0) or abs(e.sum() - HALF_PI) > 1e-12:
        raise ValueError(f"need three nonnegative angles summing to pi/2, got {eps!r}")
    return float(np.sum(_sin_p(e, p)))


def cubic_bound(p):
    """Maximum over ``u`` of the quadratic controlling the sign of ``G'''``."""
    if np.any(np.asarray(p) <= 0):
        raise DomainError("cubic_bound needs p > 0")
    p = np.asarray(p, dtype=float)
    return _scalar(6 * p + 28 / p - 16 / p**2 + 4 / p**3 - 22)


# ---------------------------------------------------------------------------
# grid suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    points_per_axis: int = 1000
    p_range: tuple[float, float] | None = None
    tolerance: float = 1e-12
    p_points: int = 11
    enforce_hypotheses: bool = True

    def __post_init__(self):
        if self.points_per_axis < 100:
            raise ValueError("points_per_axis must be at least 100")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.p_points < 1:
            raise ValueError("p_points must be positive")
        if self.p_range is not None and self.p_range[0] > self.p_range[1]:
            raise ValueError("p_range must be an ordered interval")


@dataclass(frozen=True)
class LemmaReport:
    lemma_id: str
    passed: bool
    worst_margin: float
    worst_point: dict = field(default_factory=dict)
    tolerance: float = 1e-12
    points: int = 0


@dataclass(frozen=True)
class _Suite:
    func: object
    hypothesis: tuple  # (lo, hi, lo_open, hi_open)
    default: tuple  # default sampled p interval
    p_only: bool = False  # p is the only axis; sample it at points_per_axis


def _theta_c(p):
    return np.arccos(np.sqrt((p - 1.0) / p))


def _g(theta, p):
    return np.sin(HALF_PI - theta) ** (p - 1.0) * np.sin(theta)


def _suite_gg_a(p, n):
    tc = _theta_c(p)
    up = np.linspace(0.0, tc, n)
    down = np.linspace(tc, HALF_PI, n)
    m = np.concatenate((np.diff(_g(up, p)), -np.diff(_g(down, p))))
    theta = np.concatenate((up[:-1], down[:-1]))
    return m, {"theta": theta}


def _suite_gg_b(p, n):
    t = np.linspace(0.0, 0.25 * np.pi, n)
    return _g(HALF_PI - t, p) - _g(t, p), {"theta": t}


def _suite_gg_c(p, n):
    tc = _theta_c(p)
    a = np.linspace(0.0, HALF_PI - tc, n)
    return _g(tc - a, p) - _g(tc + a, p), {"alpha": a}


def _suite_gg_d(p, n):
    tc = _theta_c(p)
    # x = theta_c itself is excluded: G is flat there and y is not resolvable in floats
    x = np.linspace(0.0, tc, n, endpoint=False)
    gx = _g(x, p)
    ok = gx >= _g(HALF_PI, p)
    lo = np.full(x.shape, tc)
    hi = np.full(x.shape, HALF_PI)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        above = _g(mid, p) >= gx
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    y = 0.5 * (lo + hi)
    m = tc - 0.5 * (x + y)
    return m[ok], {"x": x[ok], "y": y[ok]}


def _suite_kk(p, n):
    nu = np.linspace(0.0, HALF_PI, n)[:, None]
    t = np.linspace(0.0, 1.0, n)[None, :]
    span = HALF_PI - nu
    theta = t * span
    bound = 1.0 + _sin_p(nu, p)
    m_bound = _cos_p(theta, p) + _cos_p(span - theta, p) - bound
    # single interior critical point: K' >= 0 on the first half of the interval
    first = 0.5 * theta
    m_crit = _g(span - first, p) - _g(first, p)
    nu_b = np.broadcast_to(nu, theta.shape)
    m = np.concatenate((m_bound.ravel(), m_crit.ravel()))
    return m, {"theta": np.concatenate((theta.ravel(), first.ravel())), "nu": np.tile(nu_b.ravel(), 2)}


def _suite_ll(p, n):
    a = np.linspace(0.0, np.pi / 3, n)
    return 1.0 + 2.0 * _sin_p(0.5 * a, p) + _cos_p(a, p) - 2.0, {"alpha": a}


def _suite_pp(p, n):
    a = np.linspace(np.pi / 3, HALF_PI, n)
    vals = _cos_p(a, p) + _cos_p(2.0 * np.pi / 3 - a, p)
    m = vals - vals[0]
    if p <= LOG3_LOG2:
        # the 2/3 bound follows from P(pi/3) = 2^(1-p) >= 2/3 only up to log3/log2
        m = np.minimum(m, vals - 2.0 / 3.0)
    return m, {"alpha": a}


def _suite_rr(p, n):
    a = np.linspace(0.0, np.pi / 3, n)[:, None]
    rho = np.linspace(0.0, 1.0, n)[None, :] * 0.5 * a
    r = _sin_p(rho, p) + _sin_p(a - rho, p)
    ends = np.minimum(r[:, :1], r[:, -1:])
    a_b = np.broadcast_to(a, rho.shape)
    return (r - ends).ravel(), {"rho": rho.ravel(), "alpha": a_b.ravel()}


def _suite_eps(p, n):
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    keep = i + j <= n
    e1 = i[keep] * HALF_PI / n
    e2 = j[keep] * HALF_PI / n
    e3 = np.maximum(HALF_PI - e1 - e2, 0.0)
    m = _sin_p(e1, p) + _sin_p(e2, p) + _sin_p(e3, p) - 1.0
    return m, {"eps1": e1, "eps2": e2, "eps3": e3}


def _delta(theta, rho, p):
    # |cos(theta - theta_2)|^p + |cos(theta - theta_1)|^p with theta_1 = 0, theta_2 = pi/2 + rho
    return _cos_p(theta - (HALF_PI + rho), p) + _cos_p(theta, p)


def _suite_iia_single(p, n):
    rho = np.linspace(0.0, np.pi / 6, n)[:, None]
    t = np.linspace(0.0, 1.0, n)[None, :]
    theta = HALF_PI + rho + t * (HALF_PI - rho)
    m = _delta(theta, rho, p) - 1.0
    return m.ravel(), {"rho": np.broadcast_to(rho, theta.shape).ravel(), "theta": theta.ravel()}


def _suite_iia_pair(p, n):
    # the pair sum separates, so the grid minimum is the sum of the two minima
    rho = np.linspace(0.0, np.pi / 6, n)[:, None]
    t = np.linspace(0.0, 1.0, n)[None, :]
    type1 = HALF_PI + rho + t * (HALF_PI - rho)
    type2 = 2.0 * rho + t * (HALF_PI - 3.0 * rho)
    d1 = _delta(type1, rho, p)
    d2 = _delta(type2, rho, p)
    i1, i2 = d1.argmin(axis=1), d2.argmin(axis=1)
    rows = np.arange(rho.shape[0])
    m = d1[rows, i1] + d2[rows, i2] - 2.0
    return m, {"rho": rho.ravel(), "theta_i": type1[rows, i1], "theta_j": type2[rows, i2], "_evaluated": 2 * d1.size}


def _outer(n):
    return max(16, int(round(n ** (2.0 / 3.0))))


def _iib_box(n):
    no = _outer(n)
    rho = np.linspace(0.0, np.pi / 6, no)[:, None]
    s = np.linspace(0.0, 1.0, no)[None, :]
    alpha = s * (HALF_PI - 3.0 * rho)
    rho = np.broadcast_to(rho, alpha.shape).ravel()
    return rho, alpha.ravel()


def _e_p(theta, rho, alpha, p):
    # p >= 1 here, so plain |cos|**p is accurate near the zeros
    return np.abs(np.cos(theta - (HALF_PI + rho))) ** p + np.abs(np.cos(theta - (2.0 * rho + alpha))) ** p


def _type2_min(rho, alpha, p, n):
    t = np.linspace(0.0, 1.0, n)[None, :]
    beta = t * (HALF_PI - 3.0 * rho - alpha)[:, None]
    theta = (2.0 * rho + alpha)[:, None] + beta
    e = _e_p(theta, rho[:, None], alpha[:, None], p)
    k = e.argmin(axis=1)
    rows = np.arange(rho.size)
    return e[rows, k], theta[rows, k]


def _suite_iib_single(p, n):
    rho, alpha = _iib_box(n)
    e, theta = _type2_min(rho, alpha, p, n)
    return e - 1.0, {"rho": rho, "alpha": alpha, "theta": theta, "_evaluated": e.size * n}


def _suite_iib_pair(p, n):
    rho, alpha = _iib_box(n)
    e2, th2 = _type2_min(rho, alpha, p, n)
    t = np.linspace(0.0, 1.0, n)[None, :]
    # type I range [pi/2 + rho, pi]; its right end is theta_1 = 0 mod pi
    th1 = HALF_PI + rho[:, None] + t * (HALF_PI - rho)[:, None]
    e1 = _e_p(th1, rho[:, None], alpha[:, None], p)
    k = e1.argmin(axis=1)
    rows = np.arange(rho.size)
    m = e1[rows, k] + e2 - 2.0
    return m, {"rho": rho, "alpha": alpha, "theta_i": th2, "theta_j": th1[rows, k], "_evaluated": 2 * m.size * n}


def _suite_cubic(p, n):
    return np.atleast_1d(-cubic_bound(p)), {}


_OFF = 1e-9  # half-open offset keeping grids off excluded endpoints

SUITES = {
    "GG-a": _Suite(_suite_gg_a, (1.0, 2.0, False, False), (1.0 + _OFF, 2.0)),
    "GG-b": _Suite(_suite_gg_b, (1.0, 2.0, False, False), (1.0, 2.0)),
    "GG-c": _Suite(_suite_gg_c, (1.0, P_MAX_GG, False, False), (1.0 + _OFF, P_MAX_GG)),
    "GG-d": _Suite(_suite_gg_d, (1.0, P_MAX_GG, False, False), (1.0 + _OFF, P_MAX_GG)),
    "CUBIC": _Suite(_suite_cubic, (1.0, P_MAX_GG, False, False), (1.0, P_MAX_GG), p_only=True),
    "KK": _Suite(_suite_kk, (1.0, 2.0, False, False), (1.0, 2.0)),
    "LL": _Suite(_suite_ll, (4.0 / 3.0, LOG3_LOG2, False, False), (4.0 / 3.0, LOG3_LOG2)),
    "PP": _Suite(_suite_pp, (4.0 / 3.0, P_MAX_GG, True, False), (4.0 / 3.0 + _OFF, P_MAX_GG)),
    "RR": _Suite(_suite_rr, (4.0 / 3.0, P_MAX_GG, True, False), (4.0 / 3.0 + _OFF, P_MAX_GG)),
    "EPS": _Suite(_suite_eps, (1.0, LOG3_LOG2, False, False), (1.0, LOG3_LOG2)),
    "IIa-a": _Suite(_suite_iia_single, (0.0, 2.0, True, False), (0.5, 2.0)),
    "IIa-b": _Suite(_suite_iia_pair, (0.0, LOG3_LOG2, True, False), (0.5, LOG3_LOG2)),
    "IIb-a": _Suite(_suite_iib_single, (1.0, 2.0, False, False), (1.0, 2.0)),
    "IIb-b": _Suite(_suite_iib_pair, (1.0, LOG3_LOG2, False, False), (1.0, LOG3_LOG2)),
}


def _check_range(lemma_id, lo, hi):
    h_lo, h_hi, lo_open, hi_open = SUITES[lemma_id].hypothesis
    bad_lo = lo < h_lo or (lo_open and lo <= h_lo)
    bad_hi = hi > h_hi or (hi_open and hi >= h_hi)
    if bad_lo or bad_hi:
        raise ValueError(f"p-range [{lo}, {hi}] violates the hypothesis range of {lemma_id}")


def run_lemma_suite(lemma_id: str, grid: GridSpec | None = None) -> LemmaReport:
    """
    Evaluate one lemma's inequality on a grid and report the worst margin.

    Angle axes use ``grid.points_per_axis`` points; suites with more than two
    angle axes scan their outer parameters with ``points_per_axis**(2/3)``
    points each. The exponent axis has ``grid.p_points`` points, or
    ``grid.points_per_axis`` for suites whose only axis is the exponent.

    Raises
    ------
    ValueError
        If the p-range leaves the lemma's hypothesis range while
        ``grid.enforce_hypotheses`` is set.
    """
    grid = grid or GridSpec()
    if lemma_id not in SUITES:
        raise KeyError(f"unknown lemma suite {lemma_id!r}; known: {sorted(SUITES)}")
    suite = SUITES[lemma_id]
    lo, hi = grid.p_range if grid.p_range is not None else suite.default
    if grid.enforce_hypotheses:
        _check_range(lemma_id, lo, hi)
    count = grid.points_per_axis if suite.p_only else grid.p_points
    ps = np.linspace(lo, hi, count) if count > 1 and hi > lo else np.array([lo])
    worst, where, count = np.inf, {}, 0
    for p in ps:
        m, params = suite.func(float(p), grid.points_per_axis)
        count += params.pop("_evaluated", m.size)
        if m.size == 0:
            continue
        k = int(np.argmin(m))
        if m[k] < worst:
            worst = float(m[k])
            where = {"p": float(p), **{name: float(np.ravel(v)[k]) for name, v in params.items()}}
    return LemmaReport(lemma_id, bool(worst >= -grid.tolerance), worst, where, grid.tolerance, count)


def run_all(grid: GridSpec | None = None) -> list[LemmaReport]:
    return [run_lemma_suite(k, grid) for k in SUITES]
