"""Cyclic Jacobi eigendecomposition for small symmetric matrices.

Everything in lift space is 4x4, so a fixed-order sweep over the six upper
off-diagonal entries converges in a handful of passes. Keeping the solver
in-package makes eigenvector signs and tie ordering reproducible bit for bit.
"""

from __future__ import annotations

import math

import numpy as np


def _rotate(A: np.ndarray, V: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    cp = A[:, p].copy()
    cq = A[:, q].copy()
    A[:, p] = c * cp - s * cq
    A[:, q] = s * cp + c * cq
    rp = A[p, :].copy()
    rq = A[q, :].copy()
    A[p, :] = c * rp - s * rq
    A[q, :] = s * rp + c * rq
    A[p, q] = 0.0
    A[q, p] = 0.0
    vp = V[:, p].copy()
    vq = V[:, q].copy()
    V[:, p] = c * vp - s * vq
    V[:, q] = s * vp + c * vq


def symmetric_eig(S, tol: float = 1e-13, max_sweeps: int = 64):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with eigenvalues sorted descending and eigenvectors in
    the matching columns of V. Each eigenvector is sign-fixed so that its
    largest-magnitude component is positive, which pins the result up to
    genuine eigenvalue ties.
    """
    M = np.asarray(S, dtype=float)
    A = 0.5 * (M + M.T)
    n = A.shape[0]
    V = np.eye(n)
    # Frobenius norm is invariant under the sweeps; compute the scale once.
    # The stopping test is relative so tiny- and huge-scaled inputs behave
    # identically; the floor only guards the all-zero matrix.
    scale = max(float(np.linalg.norm(A)), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        # Off-diagonal norm taken entrywise: the sqrt(|A|^2 - |diag|^2) form
        # cancels catastrophically and cannot see residuals below ~1e-8.
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                # Entries this far below the working scale cannot move the
                # off-diagonal norm past the stopping test; rotating on them
                # would also overflow the tau quotient.
                if abs(apq) <= 1e-18 * scale:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                _rotate(A, V, p, q, c, t * c)
    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    w = w[order]
    V = V[:, order]
    for k in range(n):
        col = V[:, k]
        if col[int(np.argmax(np.abs(col)))] < 0.0:
            V[:, k] = -col
    return w, V
