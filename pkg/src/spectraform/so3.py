"""SO(3)/so(3) primitives: hat/vee maps, exponential and logarithm, geodesic
stepping, and nearest-rotation projection.

All functions are pure and operate on plain float64 arrays.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import Degenerate, NotSkew

SKEW_TOL = 1e-9
_SMALL_ANGLE = 1e-8
_NEAR_PI = 1e-6


def hat(w) -> np.ndarray:
    """Skew matrix of a 3-vector, so that hat(w) @ x == cross(w, x)."""
    w = np.asarray(w, dtype=float)
    return np.array(
        [
            [0.0, -w[2], w[1]],
            [w[2], 0.0, -w[0]],
            [-w[1], w[0], 0.0],
        ]
    )


def vee(M, tol: float = SKEW_TOL) -> np.ndarray:
    """Inverse of hat. Raises NotSkew if the symmetry residual exceeds tol."""
    M = np.asarray(M, dtype=float)
    residual = float(np.linalg.norm(M + M.T))
    if residual > tol:
        raise NotSkew(f"symmetry residual {residual:.3e} exceeds {tol:.1e}")
    return np.array([M[2, 1], M[0, 2], M[1, 0]])


def exp_so3(M) -> np.ndarray:
    """Matrix exponential of a skew matrix, in Rodrigues closed form.

    Below the small-angle threshold the sin/cos coefficients switch to their
    second-order Taylor polynomials to avoid 0/0.
    """
    M = np.asarray(M, dtype=float)
    theta = math.sqrt(M[2, 1] ** 2 + M[0, 2] ** 2 + M[1, 0] ** 2)
    if theta < _SMALL_ANGLE:
        a = 1.0 - theta * theta / 6.0
        b = 0.5 - theta * theta / 24.0
    else:
        a = math.sin(theta) / theta
        b = (1.0 - math.cos(theta)) / (theta * theta)
    return np.eye(3) + a * M + b * (M @ M)


def exp_approx(M, alpha: float, order: int) -> np.ndarray:
    """Truncated approximation of exp(alpha * M) for skew M.

    Order 1 returns I + alpha * M. Order 2 adds (alpha**2 / 2) * M.T @ M; for
    skew M the Gram term equals -M @ M, so the order-2 form is *not* the
    two-term Taylor polynomial of the exponential. It is kept in this Gram
    form on purpose (the order-2 variant is exposed as a utility only; the
    simulator integrates with ``geodesic_step`` or the order-1 form).
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    M = np.asarray(M, dtype=float)
    out = np.eye(3) + alpha * M
    if order == 2:
        out = out + 0.5 * alpha * alpha * (M.T @ M)
    return out


def log_so3(R) -> np.ndarray:
    """Principal logarithm of a rotation; returns a skew matrix, angle in [0, pi].

    The sine of the angle is taken from the antisymmetric part itself (not
    from acos of the trace), so the axis normalization stays well conditioned
    up to the near-pi branch. There the antisymmetric part vanishes and the
    axis is recovered from the dominant column of (R + I)/2 (which tends to
    axis*axis^T), with the sign fixed so the first nonzero axis component is
    positive.
    """
    R = np.asarray(R, dtype=float)
    v = 0.5 * np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
    s = float(np.linalg.norm(v))  # == |sin(angle)|
    c = 0.5 * (float(np.trace(R)) - 1.0)
    theta = math.atan2(s, c)
    if theta < _SMALL_ANGLE:
        return (0.5 + theta * theta / 12.0) * (R - R.T)
    if math.pi - theta < _NEAR_PI:
        B = 0.5 * (R + np.eye(3))
        k = int(np.argmax(np.diag(B)))
        axis = B[:, k] / float(np.linalg.norm(B[:, k]))
        for comp in axis:
            if comp != 0.0:
                if comp < 0.0:
                    axis = -axis
                break
        return hat(theta * axis)
    return hat((theta / s) * v)


def geodesic_step(R, w, eps: float) -> np.ndarray:
    """Move from R along the geodesic with body-frame rate w for time eps.

    The result R @ exp(eps * hat(w)) stays on SO(3) exactly, so no projection
    is needed afterwards.
    """
    return np.asarray(R, dtype=float) @ exp_so3(hat(eps * np.asarray(w, dtype=float)))


def project_to_so3(M) -> np.ndarray:
    """Frobenius-nearest rotation to M, via SVD polar decomposition.

    The middle factor diag(1, 1, det(U V^T)) flips the last axis when the
    polar factor is a reflection. Raises Degenerate when the smallest
    singular value is below 1e-12.
    """
    M = np.asarray(M, dtype=float)
    U, s, Vt = np.linalg.svd(M)
    if s[-1] < 1e-12:
        raise Degenerate(f"smallest singular value {s[-1]:.3e} below 1e-12")
    return U @ np.diag([1.0, 1.0, float(np.linalg.det(U @ Vt))]) @ Vt


def rotation_defect(R) -> tuple[float, float]:
    """(orthogonality residual, determinant error) of a candidate rotation."""
    R = np.asarray(R, dtype=float)
    orth = float(np.linalg.norm(R.T @ R - np.eye(3)))
    det = abs(float(np.linalg.det(R)) - 1.0)
    return orth, det
