from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fplab.families import FamilyInstance, FamilyKind, best_alpha, build, closed_form_potential
from fplab.optimize import (
    DivergenceError,
    OptimizerFailure,
    OptimizerSettings,
    _fp_gauge_fixed,
    golden_section,
    minimize_fp,
    nelder_mead,
    snap_to_lattice,
)
from fplab.potentials import AngleConfig, equivalent, frame_potential

PI = math.pi
FAST = OptimizerSettings(restarts=60, master_seed=3, threads=1)


# --- settings ----------------------------------------------------------------


@pytest.mark.parametrize(
    "bad",
    [
        {"restarts": 0},
        {"reflection": 0.0},
        {"expansion": 1.0},
        {"contraction": 1.0},
        {"shrink": 0.0},
        {"master_seed": -1},
    ],
)
def test_settings_validation(bad):
    with pytest.raises(ValueError):
        OptimizerSettings(**bad)


def test_settings_defaults():
    s = OptimizerSettings()
    assert (s.restarts, s.reflection, s.expansion, s.contraction, s.shrink) == (3000, 1, 2, 0.5, 0.5)
    assert (s.f_tol, s.x_tol, s.max_iters) == (1e-13, 1e-10, 100_000)


# --- Nelder-Mead -------------------------------------------------------------


def test_nm_convex_1d():
    x, f, ok = nelder_mead(lambda z: (z[0] - 1.0) ** 2, [5.0])
    assert ok
    assert x[0] == pytest.approx(1.0, abs=1e-8)
    assert f == pytest.approx(0.0, abs=1e-8)


def test_nm_anisotropic_quadratic():
    x, f, ok = nelder_mead(lambda z: z[0] ** 2 + 10 * z[1] ** 2, [3.0, 3.0])
    assert ok
    np.testing.assert_allclose(x, [0.0, 0.0], atol=1e-6)


def test_nm_frame_potential_three_harmonic(rng):
    args = np.array([2.0, 0.0])
    x, f, ok = nelder_mead(lambda z: _fp_gauge_fixed(z, args), rng.uniform(0, PI, 2))
    assert f == pytest.approx(1.5, abs=1e-9)


def test_nm_rosenbrock():
    rosen = lambda z: 100 * (z[1] - z[0] ** 2) ** 2 + (1 - z[0]) ** 2
    x, f, ok = nelder_mead(rosen, [-1.2, 1.0])
    np.testing.assert_allclose(x, [1.0, 1.0], atol=1e-6)


def test_nm_divergence_reports_point():
    with pytest.raises(DivergenceError) as info:
        nelder_mead(lambda z: math.nan if z[0] > 1 else z[0] ** 2, [1.0], step=0.5)
    assert info.value.point is not None


def test_nm_max_iters_not_converged():
    x, f, ok = nelder_mead(lambda z: float(np.sum(z**2)), [3.0, 2.0, 1.0], OptimizerSettings(max_iters=5))
    assert not ok


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.1, 10))
def test_nm_finds_shifted_quadratic(a, b, w):
    x, f, ok = nelder_mead(lambda z: (z[0] - a) ** 2 + w * (z[1] - b) ** 2, [0.0, 0.0])
    assert ok
    np.testing.assert_allclose(x, [a, b], atol=1e-6)


# --- golden section ----------------------------------------------------------


def test_golden_examples():
    assert golden_section(lambda x: (x - 1) ** 2, 0, 2, 1e-10)[0] == pytest.approx(1.0, abs=1e-9)
    assert golden_section(lambda x: x**2, -1, 1, 1e-10)[0] == pytest.approx(0.0, abs=1e-9)


def test_golden_z_potential():
    f = lambda a: closed_form_potential(FamilyInstance(FamilyKind.Z, 5, min(max(a, 0.0), PI / 2)), 2.0)
    a, v = golden_section(f, 0.0, PI / 2, 1e-12)
    assert a == pytest.approx(math.acos(-0.25) / 2, abs=1e-7)
    assert v == pytest.approx(7.5, abs=1e-12)


def test_golden_rejects_bad_bracket_and_nonfinite():
    with pytest.raises(ValueError):
        golden_section(lambda x: x, 1.0, 0.0)
    with pytest.raises(DivergenceError):
        golden_section(lambda x: math.inf, 0.0, 1.0)


@given(st.floats(-3, 3), st.floats(0.01, 5))
def test_golden_locates_vertex(c, w):
    x, _ = golden_section(lambda t: w * (t - c) ** 2, -4.0, 4.0, 1e-10)
    assert x == pytest.approx(c, abs=1e-8)


# --- minimize_fp -------------------------------------------------------------


def perp(n):
    return build(FamilyInstance(FamilyKind.PERP, n))


def test_minimize_n5_p1_perp():
    res = minimize_fp(5, 1.0, OptimizerSettings(restarts=300, master_seed=0))
    assert res.value == 8.0
    assert equivalent(res.config, perp(5), 1e-9)
    assert res.value == frame_potential(res.config, 1.0)


def test_minimize_n4_even_perp():
    res = minimize_fp(4, 1.5, FAST)
    assert res.value == pytest.approx(4.0, abs=1e-9)
    assert equivalent(res.config, perp(4), 1e-6)


def test_minimize_n5_z_phase():
    res = minimize_fp(5, 1.9, OptimizerSettings(restarts=300, master_seed=1))
    assert res.value == pytest.approx(best_alpha(FamilyKind.Z, 1.9)[1], abs=1e-9)


def test_minimize_rejects_bad_input():
    with pytest.raises(ValueError):
        minimize_fp(1, 1.0, FAST)
    with pytest.raises(ValueError):
        minimize_fp(3, 0.0, FAST)
    with pytest.raises(ValueError):
        minimize_fp(3, 1.0, FAST, gauge_index=3)


def test_total_failure_raises():
    with pytest.raises(OptimizerFailure):
        minimize_fp(4, 1.3, OptimizerSettings(restarts=3, max_iters=2))


def test_result_invariants():
    res = minimize_fp(5, 2.5, FAST)
    assert res.value == pytest.approx(frame_potential(res.config, 2.5), rel=1e-12)
    assert res.restarts_used == 60
    assert res.restart_values[res.best_restart_index] <= np.nanmin(res.restart_values) + 1e-12
    rb = res.running_best()
    assert np.all(np.diff(rb) <= 0)


@pytest.mark.parametrize("threads", [2, 4, 8])
def test_thread_count_invariance(threads):
    base = minimize_fp(5, 1.85, FAST.replace(threads=1))
    other = minimize_fp(5, 1.85, FAST.replace(threads=threads))
    assert other.config == base.config
    assert other.value == base.value
    assert other.best_restart_index == base.best_restart_index
    np.testing.assert_array_equal(other.restart_values, base.restart_values)


def test_seed_changes_streams():
    a = minimize_fp(5, 1.85, FAST)
    b = minimize_fp(5, 1.85, FAST.replace(master_seed=4))
    assert not np.array_equal(a.restart_values, b.restart_values)


@pytest.mark.parametrize("gauge", [1, 2, 4])
def test_gauge_consistency(gauge):
    base = minimize_fp(5, 2.2, FAST)
    other = minimize_fp(5, 2.2, FAST, gauge_index=gauge)
    assert other.value == pytest.approx(base.value, abs=1e-10)


def _family_floor(n, p):
    vals = [closed_form_potential(FamilyInstance(FamilyKind.PERP, n), p)]
    vals.append(closed_form_potential(FamilyInstance(FamilyKind.HARMONIC, n), p))
    if n == 5:
        vals += [best_alpha(FamilyKind.Y, p)[1], best_alpha(FamilyKind.Z, p)[1]]
    return min(vals)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("p", [0.5, 1.0, 1.5, 3.0])
def test_oracle_agreement(n, p):
    res = minimize_fp(n, p, OptimizerSettings(restarts=100, master_seed=0))
    floor = _family_floor(n, p)
    assert res.value <= floor + 1e-9
    assert res.value >= floor - 1e-6


@given(st.integers(2, 6), st.floats(0.3, 5.0))
def test_upper_bounds(n, p):
    res = minimize_fp(n, p, OptimizerSettings(restarts=8, master_seed=0, threads=1))
    assert res.value <= frame_potential(perp(n), p) + 1e-12
    assert res.value <= frame_potential(build(FamilyInstance(FamilyKind.HARMONIC, n)), p) + 1e-12


def test_snap_never_raises_value():
    cfg = AngleConfig([0.0, 1e-8, PI / 2 + 3e-9, 0.3])
    for p in (0.5, 1.0, 2.0):
        snapped = snap_to_lattice(cfg, p)
        assert frame_potential(snapped, p) <= frame_potential(cfg, p) * (1 + 1e-13)
