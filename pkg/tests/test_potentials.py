from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fplab.potentials import (
    LOG3_LOG2,
    AngleConfig,
    DomainError,
    canonicalize,
    equivalent,
    frame_operator_deviation,
    frame_potential,
    kernel_v,
    kernel_w,
    linearized_potential,
    pfp_counting,
    theta_c,
    theta_p,
)

PI = math.pi
H = PI / 2

angles = st.lists(st.floats(-10.0, 10.0, allow_nan=False), min_size=1, max_size=9)
exponents = st.floats(0.2, 5.0)


def perp(n):
    k = (n + 1) // 2
    return AngleConfig([0.0] * k + [H] * (n - k))


def harmonic(n):
    return AngleConfig(np.arange(n) * PI / n)


# --- AngleConfig -------------------------------------------------------------


@given(angles)
def test_angles_stored_in_half_open_period(a):
    cfg = AngleConfig(a)
    assert cfg.n == len(a)
    assert np.all(cfg.angles >= 0) and np.all(cfg.angles < PI)


def test_config_is_immutable():
    cfg = AngleConfig([0.1, 0.2])
    with pytest.raises(ValueError):
        cfg.angles[0] = 1.0


def test_config_rejects_empty_and_nonfinite():
    with pytest.raises(ValueError):
        AngleConfig([])
    with pytest.raises(ValueError):
        AngleConfig([0.0, math.nan])


def test_pi_maps_to_zero():
    assert AngleConfig([PI, -PI, 2 * PI]).angles.tolist() == [0.0, 0.0, 0.0]


# --- kernels -----------------------------------------------------------------


@pytest.mark.parametrize(
    "theta,p,expected",
    [(0.0, 1.3, 1.0), (H, 2.0, 0.0), (PI / 3, LOG3_LOG2, 1.0 / 3.0)],
)
def test_kernel_w_examples(theta, p, expected):
    assert kernel_w(theta, p) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("theta,expected", [(0.0, 1.0), (H, 0.0), (5 * PI / 4, 0.5)])
def test_kernel_v_examples(theta, expected):
    assert kernel_v(theta) == pytest.approx(expected, abs=1e-15)


def test_kernel_w_zero_at_orthogonal_for_small_p():
    # no round-off residue at the cusp
    assert kernel_w(H, 0.5) == 0.0
    assert kernel_w(-H, 0.1) == 0.0


@pytest.mark.parametrize("bad", [math.nan, math.inf])
def test_kernels_reject_nonfinite(bad):
    with pytest.raises(ValueError):
        kernel_w(bad, 1.0)
    with pytest.raises(ValueError):
        kernel_w(0.3, bad)
    with pytest.raises(ValueError):
        kernel_v(bad)


def test_kernel_w_rejects_nonpositive_p():
    with pytest.raises(ValueError):
        kernel_w(0.3, 0.0)


@pytest.mark.parametrize("p", [0.5, 1.0, 1.5, 2.0, 3.7])
def test_kernel_periodicity(p):
    t = np.linspace(-2 * PI, 2 * PI, 10_000)
    assert np.max(np.abs(kernel_w(t + PI, p) - kernel_w(t, p))) <= 1e-12
    assert np.max(np.abs(kernel_v(t + PI) - kernel_v(t))) <= 1e-12


@given(st.floats(-20, 20), exponents)
def test_kernels_in_unit_interval(t, p):
    assert 0.0 <= kernel_w(t, p) <= 1.0
    assert 0.0 <= kernel_v(t) <= 1.0


@pytest.mark.parametrize("p", [0.3, 0.7, 1.0, 1.2, 1.4, LOG3_LOG2])
def test_kernel_dominance_below_theta_p(p):
    t = np.linspace(0.0, min(theta_p(p), PI), 10_000)
    assert np.all(kernel_w(t, p) >= kernel_v(t) - 1e-12)


# --- potentials --------------------------------------------------------------


def test_frame_potential_examples():
    assert frame_potential(perp(5), 1.0) == 8.0
    assert frame_potential(AngleConfig([0.0, H]), 0.37) == 0.0
    assert frame_potential(harmonic(3), 2.0) == pytest.approx(1.5, abs=1e-15)


@pytest.mark.parametrize("n", range(1, 100))
def test_perp_closed_form_exact(n):
    expected = (n - 1) ** 2 / 2 if n % 2 else (n * n - 2 * n) / 2
    for p in (0.3, 1.0, 1.7):
        assert frame_potential(perp(n), p) == expected


def test_single_point_has_zero_potential():
    assert frame_potential(AngleConfig([1.0]), 1.5) == 0.0


@given(
    st.lists(st.floats(0, PI, exclude_max=True), min_size=2, max_size=8),
    exponents,
    st.floats(-PI, PI),
    st.randoms(use_true_random=False),
)
def test_potential_symmetry_invariance(a, p, phi, rnd):
    base = frame_potential(AngleConfig(a), p)
    perm = list(a)
    rnd.shuffle(perm)
    # x -> -x on a subset of vectors is theta -> theta + pi
    flipped = [t + PI if rnd.random() < 0.5 else t for t in a]
    reflected = -np.asarray(a)
    for variant in (np.asarray(a) + phi, perm, flipped, reflected):
        assert frame_potential(AngleConfig(variant), p) == pytest.approx(base, rel=1e-12, abs=1e-12)


def test_linearized_examples():
    assert linearized_potential(perp(5)) == 8.0
    assert linearized_potential(AngleConfig([0.0, H])) == 0.0
    assert linearized_potential(AngleConfig([0.0, PI / 4])) == pytest.approx(1.0, abs=1e-15)


def test_pfp_counting_examples():
    assert pfp_counting(perp(2), 1.3) == 0.5
    assert pfp_counting(AngleConfig([0.7]), 2.0) == 1.0
    assert pfp_counting(perp(5), 0.8) == pytest.approx(0.52, abs=1e-15)


# --- critical angles ---------------------------------------------------------


def test_theta_c_examples():
    assert theta_c(2.0) == pytest.approx(PI / 4, abs=1e-15)
    assert theta_c(1.0) == pytest.approx(H, abs=1e-15)
    assert theta_c(LOG3_LOG2) == pytest.approx(math.acos(math.sqrt(1 - 1 / LOG3_LOG2)), abs=1e-15)
    assert theta_c(LOG3_LOG2) == pytest.approx(0.9178723831, abs=1e-10)


@pytest.mark.parametrize("p", [0.99, 2.01])
def test_theta_c_domain(p):
    with pytest.raises(DomainError):
        theta_c(p)


def test_theta_p_examples():
    assert theta_p(LOG3_LOG2) == pytest.approx(PI / 3, abs=1e-10)
    assert theta_p(1.0) == PI
    assert theta_p(1.2) > PI / 3


@pytest.mark.parametrize("p", [0.0, -1.0, 2.5])
def test_theta_p_domain(p):
    with pytest.raises(DomainError):
        theta_p(p)


# --- canonical form and equivalence ------------------------------------------


def test_canonicalize_examples():
    assert canonicalize(AngleConfig([H, 0.0])).angles.tolist() == [0.0, H]
    np.testing.assert_allclose(canonicalize(AngleConfig([0.3, 0.3 + H])).angles, [0.0, H], atol=1e-15)
    np.testing.assert_allclose(canonicalize(AngleConfig([0.0, PI - 0.4])).angles, [0.0, 0.4], atol=1e-15)


@given(st.lists(st.floats(0, PI, exclude_max=True), min_size=1, max_size=7))
def test_canonicalize_idempotent(a):
    c = canonicalize(AngleConfig(a))
    assert canonicalize(c) == c
    assert c.angles[0] == 0.0


def test_equivalent_examples():
    assert equivalent(perp(5), AngleConfig([PI / 4] * 3 + [3 * PI / 4] * 2), 1e-9)
    assert not equivalent(harmonic(3), perp(3), 1e-9)
    assert equivalent(AngleConfig([0.0, 0.4]), AngleConfig([0.0, 0.4 + 1e-7]), 1e-6)


def test_equivalent_size_mismatch():
    with pytest.raises(ValueError):
        equivalent(perp(3), perp(4))


@given(
    st.lists(st.integers(0, 11), min_size=3, max_size=6),
    st.integers(0, 11),
    st.randoms(use_true_random=False),
)
def test_equivalence_relation_at_zero_tolerance(steps, rot, rnd):
    # lattice angles keep rotations exact, so tol = 0 is meaningful
    a = AngleConfig(np.asarray(steps) * PI / 12)
    b = AngleConfig((np.asarray(steps) + rot) * PI / 12)
    perm = list(b.angles)
    rnd.shuffle(perm)
    c = AngleConfig(perm)
    assert equivalent(a, a, 0.0)
    assert equivalent(a, b, 0.0) == equivalent(b, a, 0.0)
    if equivalent(a, b, 0.0) and equivalent(b, c, 0.0):
        assert equivalent(a, c, 0.0)


@given(st.lists(st.floats(0, PI, exclude_max=True), min_size=2, max_size=6), st.floats(-PI, PI))
def test_rotated_config_is_equivalent(a, phi):
    cfg = AngleConfig(a)
    assert equivalent(cfg, cfg.rotated(phi), 1e-9)


# --- frame operator ----------------------------------------------------------


def test_frame_operator_examples():
    assert frame_operator_deviation(perp(2)).deviation == pytest.approx(0.0, abs=1e-15)
    s5 = frame_operator_deviation(perp(5))
    assert s5.deviation == pytest.approx(0.5, abs=1e-15)
    np.testing.assert_allclose(s5.gram_2x2, np.diag([3.0, 2.0]), atol=1e-15)
    assert frame_operator_deviation(harmonic(5)).deviation <= 1e-12


@given(st.lists(st.floats(0, PI, exclude_max=True), min_size=1, max_size=12))
def test_frame_operator_trace_and_symmetry(a):
    s = frame_operator_deviation(AngleConfig(a))
    g = s.gram_2x2
    assert np.trace(g) == pytest.approx(len(a), abs=1e-12)
    assert g[0, 1] == g[1, 0]
    assert np.all(np.linalg.eigvalsh(g) >= -1e-12)
    assert s.frobenius >= s.deviation - 1e-15
