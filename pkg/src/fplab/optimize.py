"""
Derivative-free minimizers and the multi-start frame-potential driver.

The Nelder-Mead loop is written once in plain numpy and compiled with numba
for the frame-potential objective; arbitrary Python objectives run the same
source uncompiled.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numba
import numpy as np

from .potentials import ORTH_EPS, AngleConfig, canonicalize, frame_potential, reduce_angles

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0

CONVERGED, MAX_ITERS, NON_FINITE = 0, 1, 2


class DivergenceError(ArithmeticError):
    """The objective returned a non-finite value."""

    def __init__(self, point, value):
        self.point = np.array(point, dtype=float, copy=True)
        self.value = value
        super().__init__(f"objective is {value} at {self.point.tolist()}")


class OptimizerFailure(RuntimeError):
    """Every restart of a multi-start run failed."""


@dataclass(frozen=True)
class OptimizerSettings:
    restarts: int = 3000
    master_seed: int = 0
    reflection: float = 1.0
    expansion: float = 2.0
    contraction: float = 0.5
    shrink: float = 0.5
    f_tol: float = 1e-13
    x_tol: float = 1e-10
    max_iters: int = 100_000
    initial_step: float = 0.25
    polish_step: float = 1e-6
    snap_tol: float = 1e-6
    threads: int | None = None

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not self.reflection > 0:
            raise ValueError("reflection coefficient must be > 0")
        if not self.expansion > 1:
            raise ValueError("expansion coefficient must be > 1")
        if not 0 < self.contraction < 1:
            raise ValueError("contraction coefficient must lie in (0, 1)")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink coefficient must lie in (0, 1)")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 unsigned bits")

    def replace(self, **changes) -> OptimizerSettings:
        return replace(self, **changes)


def golden_section(f, a: float, b: float, tol: float = 1e-10):
    """
    Golden-section search for a minimum of ``f`` on ``[a, b]``.

    Assumes ``f`` is unimodal on the bracket; callers seed several brackets
    for multimodal functions.

    Returns
    -------
    (x_star, f_star) : tuple of float
        Best evaluated point once the bracket is narrower than ``tol``.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if not tol > 0:
        raise ValueError("tol must be positive")

    def ev(x):
        y = f(x)
        if not math.isfinite(y):
            raise DivergenceError([x], y)
        return y

    h = b - a
    c, d = a + INV_PHI2 * h, a + INV_PHI * h
    fc, fd = ev(c), ev(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = a + INV_PHI2 * (b - a)
            fc = ev(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = ev(d)
        if c >= d:
            # bracket has collapsed to float resolution
            break
    return (c, fc) if fc <= fd else (d, fd)


def _nm_core(objective, args, x0, step, rho, chi, gamma, sigma, f_tol, x_tol, max_iters):
    n = x0.size
    sim = np.empty((n + 1, n))
    fs = np.empty(n + 1)
    for i in range(n + 1):
        for k in range(n):
            sim[i, k] = x0[k]
        if i > 0:
            sim[i, i - 1] += step
        fs[i] = objective(sim[i], args)
        if not np.isfinite(fs[i]):
            return sim[i].copy(), fs[i], NON_FINITE, 0
    eps = np.finfo(np.float64).eps
    xr = np.empty(n)
    xe = np.empty(n)
    xc = np.empty(n)
    cen = np.empty(n)
    it = 0
    status = MAX_ITERS
    while True:
        order = np.argsort(fs)
        sim = sim[order]
        fs = fs[order]
        spread = fs[n] - fs[0]
        diam = 0.0
        scale = 1.0
        for k in range(n):
            scale = max(scale, abs(sim[0, k]))
            for i in range(1, n + 1):
                diam = max(diam, abs(sim[i, k] - sim[0, k]))
        # the second test stops a simplex that has collapsed to float resolution
        if (spread <= f_tol and diam <= x_tol) or diam <= 8.0 * eps * scale:
            status = CONVERGED
            break
        if it >= max_iters:
            break
        it += 1
        for k in range(n):
            s = 0.0
            for i in range(n):
                s += sim[i, k]
            cen[k] = s / n
        for k in range(n):
            xr[k] = cen[k] + rho * (cen[k] - sim[n, k])
        fr = objective(xr, args)
        if not np.isfinite(fr):
            return xr.copy(), fr, NON_FINITE, it
        if fr < fs[0]:
            for k in range(n):
                xe[k] = cen[k] + chi * (xr[k] - cen[k])
            fe = objective(xe, args)
            if not np.isfinite(fe):
                return xe.copy(), fe, NON_FINITE, it
            if fe < fr:
                sim[n] = xe
                fs[n] = fe
            else:
                sim[n] = xr
                fs[n] = fr
            continue
        if fr < fs[n - 1]:
            sim[n] = xr
            fs[n] = fr
            continue
        if fr < fs[n]:
            for k in range(n):
                xc[k] = cen[k] + gamma * (xr[k] - cen[k])
            fc = objective(xc, args)
            accept = fc <= fr
        else:
            for k in range(n):
                xc[k] = cen[k] + gamma * (sim[n, k] - cen[k])
            fc = objective(xc, args)
            accept = fc < fs[n]
        if not np.isfinite(fc):
            return xc.copy(), fc, NON_FINITE, it
        if accept:
            sim[n] = xc
            fs[n] = fc
            continue
        for i in range(1, n + 1):
            for k in range(n):
                sim[i, k] = sim[0, k] + sigma * (sim[i, k] - sim[0, k])
            fs[i] = objective(sim[i], args)
            if not np.isfinite(fs[i]):
                return sim[i].copy(), fs[i], NON_FINITE, it
    return sim[0].copy(), fs[0], status, it


_nm_core_jit = numba.njit(nogil=True, cache=True)(_nm_core)


def nelder_mead(objective, x0, settings: OptimizerSettings | None = None, step: float | None = None):
    """
    Minimize ``objective`` from ``x0`` with the Nelder-Mead simplex method.

    Iterates until the spread of simplex values is below ``settings.f_tol``
    and its diameter is below ``settings.x_tol`` (or the simplex has
    collapsed to float resolution), or ``settings.max_iters`` is reached.

    Returns
    -------
    (x_star, f_star, converged)

    Raises
    ------
    DivergenceError
        If the objective returns a non-finite value.
    """
    s = settings or OptimizerSettings()
    x0 = np.atleast_1d(np.asarray(x0, dtype=np.float64)).copy()
    h = s.initial_step if step is None else step
    coeffs = (h, s.reflection, s.expansion, s.contraction, s.shrink, s.f_tol, s.x_tol, s.max_iters)
    if isinstance(objective, numba.core.registry.CPUDispatcher):
        x, fx, status, _ = _nm_core_jit(objective, np.empty(0), x0, *coeffs)
    else:
        x, fx, status, _ = _nm_core(lambda z, _: float(objective(z)), None, x0, *coeffs)
    if status == NON_FINITE:
        raise DivergenceError(x, fx)
    return x, float(fx), status == CONVERGED


@numba.njit(nogil=True, cache=True)
def _fp_gauge_fixed(x, args):
    # args = (p, gauge index); the gauge angle is pinned at 0
    p = args[0]
    g = int(args[1])
    n = x.size + 1
    a = np.empty(n)
    j = 0
    for i in range(n):
        if i == g:
            a[i] = 0.0
        else:
            a[i] = x[j]
            j += 1
    half = 0.5 * np.pi
    s = 0.0
    for i in range(n):
        for k in range(i + 1, n):
            u = abs((a[i] - a[k]) % np.pi - half)
            if u >= ORTH_EPS:
                s += np.sin(u) ** p
    return 2.0 * s


@numba.njit(nogil=True, cache=True)
def _fp_full(a, p):
    half = 0.5 * np.pi
    s = 0.0
    for i in range(a.size):
        for k in range(i + 1, a.size):
            u = abs((a[i] - a[k]) % np.pi - half)
            if u >= ORTH_EPS:
                s += np.sin(u) ** p
    return 2.0 * s


@numba.njit(nogil=True, cache=True)
def _cusp_descent(a, p, max_sweeps):
    """
    Exact descent moves for ``p <= 1`` on full angle vectors.

    For ``p <= 1`` the kernel is concave between its zeros, so along one angle,
    or along a rigid rotation of a class of mutually parallel or orthogonal
    angles, the potential is minimized where some pair becomes orthogonal.
    Only those candidate positions are evaluated.
    """
    n = a.size
    half = 0.5 * np.pi
    a = a.copy()
    f = _fp_full(a, p)
    trial = np.empty(n)
    label = np.empty(n, dtype=np.int64)
    for _ in range(max_sweeps):
        improved = False
        for k in range(n):
            best_t = a[k]
            best_f = f
            for l in range(n):
                if l == k:
                    continue
                trial[:] = a
                trial[k] = (a[l] + half) % np.pi
                ft = _fp_full(trial, p)
                if ft < best_f - 4e-16 * best_f:
                    best_f = ft
                    best_t = trial[k]
            if best_f < f:
                a[k] = best_t
                f = best_f
                improved = True
        # classes of angles that differ by a multiple of pi/2
        for i in range(n):
            label[i] = -1
        m = 0
        for i in range(n):
            if label[i] >= 0:
                continue
            label[i] = m
            for j in range(i + 1, n):
                if label[j] < 0:
                    r = (a[j] - a[i]) % half
                    if r < 1e-12 or half - r < 1e-12:
                        label[j] = m
            m += 1
        for c in range(m):
            best_r = 0.0
            best_f = f
            for i in range(n):
                if label[i] != c:
                    continue
                for j in range(n):
                    if label[j] == c:
                        continue
                    for shift in (0.0, half):
                        r = a[j] + shift - a[i]
                        for t in range(n):
                            trial[t] = a[t] + r if label[t] == c else a[t]
                        ft = _fp_full(trial, p)
                        if ft < best_f - 4e-16 * best_f:
                            best_f = ft
                            best_r = r
            if best_f < f:
                for t in range(n):
                    if label[t] == c:
                        a[t] = (a[t] + best_r) % np.pi
                f = best_f
                improved = True
        if not improved:
            break
    return a, f


def _full_angles(x, gauge):
    return np.insert(np.asarray(x, dtype=np.float64), gauge, 0.0)


def _restart_start(seed: int, index: int, dim: int) -> np.ndarray:
    # Philox is counter based: the stream depends only on (seed, index)
    key = np.array([seed, index], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    return rng.uniform(0.0, np.pi, dim)


def _run_restart(index, n, p, gauge, s: OptimizerSettings):
    args = np.array([p, float(gauge)])
    x0 = _restart_start(s.master_seed, index, n - 1)
    common = (s.reflection, s.expansion, s.contraction, s.shrink, s.f_tol, s.x_tol, s.max_iters)
    x, fx, status, _ = _nm_core_jit(_fp_gauge_fixed, args, x0, s.initial_step, *common)
    if status != CONVERGED:
        return index, None, None
    xp, fp, pstatus, _ = _nm_core_jit(_fp_gauge_fixed, args, x, s.polish_step, *common)
    if pstatus == CONVERGED and fp <= fx:
        x, fx = xp, fp
    if p <= 1.0:
        a, fa = _cusp_descent(_full_angles(x, gauge), p, 1000)
        if fa < fx:
            x, fx = np.delete(reduce_angles(a - a[gauge]), gauge), fa
    return index, x, fx


def default_threads() -> int:
    env = os.environ.get("FPLAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class MinimizeResult:
    config: AngleConfig
    value: float
    restarts_used: int
    best_restart_index: int
    converged: bool
    failed_restarts: int = 0
    restart_values: np.ndarray = field(default=None, repr=False)

    def running_best(self) -> np.ndarray:
        v = np.where(np.isnan(self.restart_values), np.inf, self.restart_values)
        return np.minimum.accumulate(v)


def snap_to_lattice(config, p: float, tol: float = 1e-6) -> AngleConfig:
    """
    Round a configuration to nearby multiples of ``pi / L`` when that does not raise its potential.

    The lattices tried are ``L`` in {2, 3, 4, 6, N, 2N}; a candidate is kept
    only if every angle moves by at most ``tol``. Exact multiples matter for
    ``p <= 1``, where the potential has a cusp at orthogonal pairs.
    """
    cfg = canonicalize(config)
    f0 = frame_potential(cfg, p)
    limit = f0 + 1e-13 * max(1.0, abs(f0))
    best, fbest = cfg, np.inf
    for L in sorted({2, 3, 4, 6, cfg.n, 2 * cfg.n}):
        q = np.round(cfg.angles / (np.pi / L))
        cand = q * np.pi / L
        moved = np.abs(np.mod(cand - cfg.angles + 0.5 * np.pi, np.pi) - 0.5 * np.pi)
        if moved.max() > tol:
            continue
        snapped = canonicalize(reduce_angles(cand))
        f = frame_potential(snapped, p)
        if f <= limit and f < fbest:
            best, fbest = snapped, f
    return best


def minimize_fp(n: int, p: float, settings: OptimizerSettings | None = None, gauge_index: int = 0) -> MinimizeResult:
    """
    Global minimum of the p-frame potential of ``n`` angles by multi-start Nelder-Mead.

    Angle ``gauge_index`` is pinned at 0 and the other ``n - 1`` angles are
    optimized. Restart ``r`` starts from a uniform draw on ``[0, pi)^(n-1)``
    keyed by ``(master_seed, r)``, runs a fresh simplex of edge
    ``initial_step`` and is then polished by a second run with edge
    ``polish_step``. Restarts that fail to converge are skipped. The best
    restart (lowest value, then lowest index) is canonicalized and snapped to a
    nearby lattice when that does not increase the potential.

    Raises
    ------
    OptimizerFailure
        If every restart failed.
    """
    s = settings or OptimizerSettings()
    if n < 2:
        raise ValueError("need at least two angles")
    if not (p > 0 and math.isfinite(p)):
        raise ValueError(f"p must be positive and finite, got {p}")
    if not 0 <= gauge_index < n:
        raise ValueError("gauge_index out of range")
    threads = s.threads or default_threads()
    indices = range(s.restarts)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda r: _run_restart(r, n, p, gauge_index, s), indices))
    else:
        results = [_run_restart(r, n, p, gauge_index, s) for r in indices]

    values = np.full(s.restarts, np.nan)
    best = None
    for index, x, fx in results:
        if x is None:
            continue
        values[index] = fx
        if best is None or fx < best[2]:
            best = (index, x, fx)
    failed = int(np.isnan(values).sum())
    if best is None:
        raise OptimizerFailure(f"all {s.restarts} restarts failed for n={n}, p={p}")
    index, x, _ = best
    config = snap_to_lattice(_full_angles(x, gauge_index), p, s.snap_tol)
    return MinimizeResult(
        config=config,
        value=frame_potential(config, p),
        restarts_used=s.restarts,
        best_restart_index=index,
        converged=True,
        failed_restarts=failed,
        restart_values=values,
    )
