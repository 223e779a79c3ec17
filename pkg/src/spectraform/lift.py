"""Spectrahedral lift of the convex hull of 3x3 rotation matrices.

The hull is the image of the unit-trace slice of the 4x4 PSD cone under a
fixed linear map. The map's nine symmetric coefficient matrices are built
from Kronecker products of three 2x2 generators; a rank-1 lift point
eta @ eta.T projects exactly onto a rotation (eta behaves like a unit
quaternion, up to the usual global sign), while interior points project into
the hull.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .jacobi import symmetric_eig

LIFT_DIM = 4  # lift points are 4x4; the projected matrices are 3x3


@dataclass(frozen=True)
class LiftGenerators:
    """Fixed constants of the lift.

    ``Pe`` is the 8x4 isometry onto the even subalgebra, ``lam``/``rho`` the
    left/right multiplication operators (stacked along axis 0), and ``A`` the
    stacked 3x3x4x4 tensor of symmetric coefficient matrices: projecting Z
    reads off the nine inner products <A[i, j], Z>.
    """

    sigma0: np.ndarray
    sigma1: np.ndarray
    sigma2: np.ndarray
    Pe: np.ndarray
    lam: np.ndarray
    rho: np.ndarray
    A: np.ndarray


@dataclass(frozen=True)
class MembershipReport:
    """Diagnostics for the unit-trace PSD membership test."""

    ok: bool
    symmetry_defect: float
    min_eigenvalue: float
    trace_error: float

    def __bool__(self) -> bool:
        return self.ok


def _kron_chain(mats) -> np.ndarray:
    out = np.array([[1.0]])
    for m in mats:
        out = np.kron(out, m)
    return out


def build_generators() -> LiftGenerators:
    """Construct the lift constants (dimension fixed at 3x3 rotations).

    Deterministic: repeated builds produce bit-identical arrays. Columns of
    Pe are normalized and the orthonormality asserted explicitly, so it is a
    checked contract rather than a coincidence of the 1/2 prefactor.
    """
    n = 3
    s0 = np.eye(2)
    s1 = np.diag([1.0, -1.0])
    s2 = np.array([[0.0, -1.0], [1.0, 0.0]])

    Pe = 0.5 * np.kron(np.array([[1.0], [1.0]]), _kron_chain([s0] * (n - 1))) + 0.5 * np.kron(
        np.array([[1.0], [-1.0]]), _kron_chain([s1] * (n - 1))
    )
    Pe = Pe / np.linalg.norm(Pe, axis=0, keepdims=True)
    gram_defect = float(np.abs(Pe.T @ Pe - np.eye(2 ** (n - 1))).max())
    if gram_defect > 1e-15:
        raise AssertionError(f"Pe columns not orthonormal (defect {gram_defect:.3e})")

    lam = np.stack([_kron_chain([s1] * i + [s2] + [s0] * (n - 1 - i)) for i in range(n)])
    rho = np.stack([_kron_chain([s0] * j + [s2] + [s1] * (n - 1 - j)) for j in range(n)])

    A = np.empty((n, n, LIFT_DIM, LIFT_DIM))
    for i in range(n):
        for j in range(n):
            Aij = -Pe.T @ lam[i] @ rho[j] @ Pe
            if not np.array_equal(Aij, Aij.T):
                raise AssertionError(f"A[{i}][{j}] not symmetric")
            A[i, j] = Aij

    for arr in (s0, s1, s2, Pe, lam, rho, A):
        arr.setflags(write=False)
    return LiftGenerators(sigma0=s0, sigma1=s1, sigma2=s2, Pe=Pe, lam=lam, rho=rho, A=A)


@functools.lru_cache(maxsize=1)
def default_generators() -> LiftGenerators:
    """Shared immutable generator constants, built once per process."""
    return build_generators()


def lift_project(gen: LiftGenerators, Z) -> np.ndarray:
    """Project a 4x4 symmetric lift point to a 3x3 matrix in the hull.

    Entry (i, j) of the result is the inner product <A[i, j], Z>; the map is
    linear in Z.
    """
    return np.einsum("ijkl,kl->ij", gen.A, np.asarray(Z, dtype=float))


def lift_adjoint(gen: LiftGenerators, Y) -> np.ndarray:
    """Adjoint of the projection: sum of A[i, j] * Y[i, j], a symmetric 4x4.

    Satisfies <lift_project(Z), Y> == <Z, lift_adjoint(Y)> for all symmetric Z.
    """
    return np.einsum("ijkl,ij->kl", gen.A, np.asarray(Y, dtype=float))


def is_member(
    Z,
    sym_tol: float = 1e-9,
    eig_tol: float = 1e-10,
    trace_tol: float = 1e-10,
) -> MembershipReport:
    """Test membership in the unit-trace PSD slice, with diagnostics.

    A member is symmetric within sym_tol, has minimum eigenvalue >= -eig_tol
    and trace within trace_tol of one.
    """
    Z = np.asarray(Z, dtype=float)
    sym_defect = float(np.linalg.norm(Z - Z.T))
    w, _ = symmetric_eig(Z)
    min_eig = float(w[-1])
    trace_err = abs(float(np.trace(Z)) - 1.0)
    ok = sym_defect <= sym_tol and min_eig >= -eig_tol and trace_err <= trace_tol
    return MembershipReport(ok, sym_defect, min_eig, trace_err)


def is_extreme(Z, tol: float = 1e-6) -> bool:
    """True when the lift point has numerical rank 1 (second eigenvalue <= tol).

    The rank-1 members are exactly the extreme points of the slice, the ones
    whose projection lands on a rotation rather than inside the hull.
    """
    w, _ = symmetric_eig(np.asarray(Z, dtype=float))
    return float(w[1]) <= tol
