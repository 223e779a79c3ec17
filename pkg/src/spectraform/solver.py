"""Closed-form solvers over the unit-trace PSD slice.

Maximizing a linear functional over the slice is an eigenproblem: the optimum
is the rank-1 projector onto the top eigenvector of the cost matrix, and the
spectral gap certifies whether that optimum is unique. The energy-regularized
per-step problem reduces to a single proximal step whose prox operator is the
Frobenius projection onto the slice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jacobi import symmetric_eig
from .lift import LiftGenerators, lift_adjoint


@dataclass(frozen=True)
class LinearLiftSolution:
    """Optimum of a linear functional over the unit-trace PSD slice.

    ``Z_star`` is the rank-1 projector eta @ eta.T, ``top_eigenvalue`` the
    attained objective value, ``spectral_gap`` the margin to the second
    eigenvalue, and ``unique`` the scale-aware gap test at the default
    tolerance.
    """

    Z_star: np.ndarray
    eta: np.ndarray
    top_eigenvalue: float
    spectral_gap: float
    unique: bool


@dataclass(frozen=True)
class StepProblem:
    """One energy-regularized attitude step in lift space.

    Maximize <C, Z> - (weight / (2 eps)) * ||Z - Z_prev||_F^2 over the slice;
    ``weight`` is the scalar movement penalty and ``eps`` the step size.
    """

    C: np.ndarray
    Z_prev: np.ndarray
    weight: float
    eps: float

    def __post_init__(self):
        if not self.weight > 0.0:
            raise ValueError(f"weight must be positive, got {self.weight!r}")
        if not self.eps > 0.0:
            raise ValueError(f"eps must be positive, got {self.eps!r}")
        C = np.asarray(self.C, dtype=float)
        if float(np.linalg.norm(C - C.T)) > 1e-9:
            raise ValueError("cost matrix must be symmetric")


def default_gap_tol(top_eigenvalue: float) -> float:
    """Scale-aware tie tolerance for the uniqueness test."""
    return 1e-8 * (1.0 + abs(top_eigenvalue))


def solve_lift_cost(C) -> LinearLiftSolution:
    """Maximize <C, Z> over {Z PSD, trace Z = 1} for a symmetric 4x4 cost.

    The maximum equals the top eigenvalue of C and is attained at the
    projector onto the corresponding eigenvector. This is the seam used by
    tests to inject costs directly.
    """
    w, V = symmetric_eig(np.asarray(C, dtype=float))
    eta = V[:, 0]
    gap = float(w[0] - w[1])
    return LinearLiftSolution(
        Z_star=np.outer(eta, eta),
        eta=eta,
        top_eigenvalue=float(w[0]),
        spectral_gap=gap,
        unique=gap > default_gap_tol(float(w[0])),
    )


def solve_linear_lift(gen: LiftGenerators, M) -> LinearLiftSolution:
    """Maximize <M, X> over the hull of rotations by lifting the 3x3 input.

    The recovered attitude is the hull projection of ``Z_star``; it attains
    the maximum of <M, R> over the hull, hence over all rotations.
    """
    return solve_lift_cost(lift_adjoint(gen, np.asarray(M, dtype=float)))


def certify_unique(sol: LinearLiftSolution, tol: float | None = None) -> bool:
    """True when the spectral gap exceeds tol (default: scale-aware).

    A failed certificate signals a tie at the top of the spectrum, i.e. the
    relaxed optimum is not unique.
    """
    if tol is None:
        tol = default_gap_tol(sol.top_eigenvalue)
    return sol.spectral_gap > tol


def project_simplex(v) -> np.ndarray:
    """Euclidean projection of a vector onto {x >= 0, sum x = 1}.

    Sort-and-threshold: the active components share a common shift that
    renormalizes their sum to one.
    """
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    k = int(np.nonzero(u > css / idx)[0][-1])
    tau = css[k] / (k + 1.0)
    return np.maximum(v - tau, 0.0)


def project_spectrahedron(Z) -> np.ndarray:
    """Frobenius-nearest point of the unit-trace PSD slice.

    Eigendecompose, project the spectrum onto the probability simplex, and
    reassemble. Idempotent, and non-expansive like any projection onto a
    convex set.
    """
    w, V = symmetric_eig(np.asarray(Z, dtype=float))
    lam = project_simplex(w)
    return (V * lam) @ V.T


def solve_regularized_step(p: StepProblem) -> np.ndarray:
    """Solve the regularized step: shift along the cost, project back.

    The unique maximizer of <C, Z> - (w / (2 eps)) ||Z - Z_prev||^2 over the
    slice is the projection of Z_prev + (eps / w) C, so one proximal step is
    exact. The implied lift-space rate is (Z_next - Z_prev) / eps.
    """
    return project_spectrahedron(p.Z_prev + (p.eps / p.weight) * np.asarray(p.C, dtype=float))
