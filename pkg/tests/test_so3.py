import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectraform import (
    Degenerate,
    NotSkew,
    exp_approx,
    exp_so3,
    geodesic_step,
    hat,
    log_so3,
    project_to_so3,
    rotation_defect,
    vee,
)

from oracles import GOLDEN_ROTATION, expm_series, random_rotation

vec3 = st.lists(st.floats(-10.0, 10.0), min_size=3, max_size=3)


def test_hat_basis_and_zero():
    np.testing.assert_array_equal(
        hat([1, 0, 0]), np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0.0]])
    )
    np.testing.assert_array_equal(hat([0, 0, 0]), np.zeros((3, 3)))
    np.testing.assert_array_equal(
        hat([1, 2, 3]), np.array([[0, -3, 2], [3, 0, -1], [-2, 1, 0.0]])
    )


def test_hat_is_cross_product():
    rng = np.random.default_rng(0)
    for _ in range(20):
        w, x = rng.standard_normal(3), rng.standard_normal(3)
        np.testing.assert_allclose(hat(w) @ x, np.cross(w, x), atol=1e-14)


def test_vee_roundtrip_and_examples():
    np.testing.assert_array_equal(vee(hat([1, 2, 3])), [1, 2, 3])
    np.testing.assert_array_equal(vee(np.zeros((3, 3))), [0, 0, 0])
    np.testing.assert_array_equal(
        vee(np.array([[0, -3, 2], [3, 0, -1], [-2, 1, 0.0]])), [1, 2, 3]
    )


def test_vee_rejects_non_skew():
    with pytest.raises(NotSkew):
        vee(np.eye(3))


@given(vec3)
@settings(max_examples=100, deadline=None)
def test_hat_exactly_skew_and_vee_inverts(w):
    M = hat(w)
    np.testing.assert_array_equal(M, -M.T)
    np.testing.assert_array_equal(vee(M), np.asarray(w, dtype=float))


def test_exp_zero_is_identity():
    np.testing.assert_array_equal(exp_so3(np.zeros((3, 3))), np.eye(3))


def test_exp_against_power_series():
    # 20 terms keep the series truncation below 1e-12 up to angle pi/2;
    # larger angles get more terms so the oracle error stays negligible.
    M = hat([math.pi / 2, 0, 0])
    np.testing.assert_allclose(exp_so3(M), expm_series(M, terms=20), atol=1e-12)
    for w in ([0, 0, math.pi], [0.3, -0.2, 0.7], [1e-9, 0, 2e-9], [2.0, -1.5, 1.0]):
        M = hat(w)
        np.testing.assert_allclose(exp_so3(M), expm_series(M, terms=40), atol=1e-12)
    np.testing.assert_allclose(
        exp_so3(hat([0, 0, math.pi])), np.diag([-1.0, -1.0, 1.0]), atol=1e-12
    )


@given(vec3)
@settings(max_examples=100, deadline=None)
def test_exp_lands_on_rotations(w):
    orth, det = rotation_defect(exp_so3(hat(w)))
    assert orth <= 1e-12
    assert det <= 1e-12


def test_exp_approx_examples():
    np.testing.assert_array_equal(exp_approx(np.zeros((3, 3)), 1.0, 1), np.eye(3))
    M = hat([1, 0, 0])
    np.testing.assert_array_equal(exp_approx(M, 0.1, 1), np.eye(3) + 0.1 * M)
    np.testing.assert_allclose(
        exp_approx(M, 0.1, 2), np.eye(3) + 0.1 * M + 0.005 * (M.T @ M), atol=0
    )


def test_exp_approx_order2_uses_gram_term():
    # For skew M the Gram term is -M^2, so order 2 differs from the Taylor
    # polynomial of the exponential; pin that behavior down.
    M = hat([0.0, 0.0, 1.0])
    out = exp_approx(M, 0.2, 2)
    taylor = np.eye(3) + 0.2 * M + 0.02 * (M @ M)
    gram = np.eye(3) + 0.2 * M + 0.02 * (M.T @ M)
    np.testing.assert_allclose(out, gram, atol=0)
    assert np.linalg.norm(out - taylor) > 0.01


def test_exp_approx_rejects_bad_order():
    with pytest.raises(ValueError):
        exp_approx(np.zeros((3, 3)), 1.0, 3)


def test_exp_approx_first_order_error_is_quadratic():
    rng = np.random.default_rng(1)
    for _ in range(25):
        w = rng.standard_normal(3)
        w /= np.linalg.norm(w)
        M = hat(w)
        for alpha in (0.2, 0.1, 0.05, 0.01):
            err = np.linalg.norm(exp_so3(alpha * M) - exp_approx(M, alpha, 1))
            assert err <= 1.0 * alpha**2


def test_log_identity_and_roundtrip():
    np.testing.assert_array_equal(log_so3(np.eye(3)), np.zeros((3, 3)))
    M = hat([0.3, -0.2, 0.1])
    np.testing.assert_allclose(log_so3(exp_so3(M)), M, atol=1e-12)


def test_log_near_pi():
    R = exp_so3(hat([0, 0, math.pi]))
    M = log_so3(R)
    # Axis sign is a genuine ambiguity at pi; the exp must reproduce R.
    np.testing.assert_allclose(exp_so3(M), R, atol=1e-9)
    np.testing.assert_allclose(np.abs(vee(M)), [0, 0, math.pi], atol=1e-9)


@given(vec3, st.floats(1e-4, math.pi - 1e-6))
@settings(max_examples=100, deadline=None)
def test_log_exp_roundtrip_below_pi(axis, angle):
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if norm < 1e-6:
        axis = np.array([1.0, 0.0, 0.0])
        norm = 1.0
    w = axis / norm * angle
    np.testing.assert_allclose(vee(log_so3(exp_so3(hat(w)))), w, atol=1e-9)


def test_geodesic_step_examples():
    np.testing.assert_array_equal(geodesic_step(np.eye(3), [0, 0, 0], 0.1), np.eye(3))
    np.testing.assert_allclose(
        geodesic_step(np.eye(3), [1, 0, 0], math.pi / 2),
        expm_series(hat([math.pi / 2, 0, 0])),
        atol=1e-12,
    )


def test_geodesic_step_inverse_cancels():
    rng = np.random.default_rng(2)
    for _ in range(20):
        R = random_rotation(rng)
        w = rng.standard_normal(3)
        back = geodesic_step(geodesic_step(R, w, 0.3), -w, 0.3)
        np.testing.assert_allclose(back, R, atol=1e-12)


def test_geodesic_drift_over_many_steps():
    R = np.eye(3)
    for _ in range(10_000):
        R = geodesic_step(R, [0.3, -0.2, 0.5], 0.01)
    orth, det = rotation_defect(R)
    assert orth <= 1e-9
    assert det <= 1e-9


def test_project_identity_and_scaling():
    rng = np.random.default_rng(3)
    R = random_rotation(rng)
    np.testing.assert_allclose(project_to_so3(R), R, atol=1e-12)
    np.testing.assert_allclose(project_to_so3(0.5 * R), R, atol=1e-12)


def test_project_is_frobenius_nearest():
    rng = np.random.default_rng(4)
    for _ in range(10):
        M = rng.standard_normal((3, 3))
        if abs(np.linalg.det(M)) < 1e-3:
            continue
        P = project_to_so3(M)
        assert rotation_defect(P)[0] <= 1e-12
        best = np.linalg.norm(M - P)
        for _ in range(500):
            assert best <= np.linalg.norm(M - random_rotation(rng)) + 1e-12


def test_project_fixes_reflections():
    refl = np.diag([1.0, 1.0, -1.0])
    P = project_to_so3(refl)
    orth, det = rotation_defect(P)
    assert orth <= 1e-12 and det <= 1e-12


def test_project_rejects_degenerate():
    with pytest.raises(Degenerate):
        project_to_so3(np.diag([1.0, 1.0, 0.0]))


def test_project_golden_rounded_rotation():
    # A rotation rounded to 4 decimals projects back onto itself to ~1e-3.
    np.testing.assert_allclose(
        project_to_so3(GOLDEN_ROTATION), GOLDEN_ROTATION, atol=1e-3
    )
