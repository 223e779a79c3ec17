"""Randomized property suites behind the CLI ``verify`` command.

Each suite draws seeded random inputs, checks one structural identity of the
build, and reports the first counterexample on failure. The suites take the
lift generators explicitly so deliberately perturbed generators can be used
to confirm the checks have teeth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lift import LiftGenerators, default_generators, lift_adjoint, lift_project
from .rigidity import AgentState, FormationGraph, NetworkState, rigidity_function, rigidity_matrix
from .so3 import exp_so3, geodesic_step, hat, rotation_defect
from .solver import solve_linear_lift

# Trial counts above these are clamped per suite: the finite-difference and
# optimality suites cost orders of magnitude more per trial than the rest.
MAX_FD_TRIALS = 200
MAX_OPT_TRIALS = 200


@dataclass
class SuiteResult:
    name: str
    passed: bool
    trials: int
    detail: str = ""
    counterexample: str | None = None


def _fail(name, trials, detail, obj) -> SuiteResult:
    return SuiteResult(name, False, trials, detail, counterexample=np.array_repr(obj))


def adjoint_identity_suite(gen: LiftGenerators, trials: int, seed: int = 101) -> SuiteResult:
    """<project(Z), Y> must equal <Z, adjoint(Y)> for random pairs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        Z = rng.standard_normal((4, 4))
        Z = 0.5 * (Z + Z.T)
        Y = rng.standard_normal((3, 3))
        lhs = float(np.sum(lift_project(gen, Z) * Y))
        rhs = float(np.sum(Z * lift_adjoint(gen, Y)))
        err = abs(lhs - rhs)
        worst = max(worst, err)
        if err > 1e-12:
            return _fail("adjoint-identity", trials, f"error {err:.3e} > 1e-12", Z)
    return SuiteResult("adjoint-identity", True, trials, f"max error {worst:.3e}")


def extreme_point_suite(gen: LiftGenerators, trials: int, seed: int = 102) -> SuiteResult:
    """Rank-1 unit-trace lift points must project onto rotations."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        eta = rng.standard_normal(4)
        eta /= np.linalg.norm(eta)
        R = lift_project(gen, np.outer(eta, eta))
        orth, det = rotation_defect(R)
        err = max(orth, det)
        worst = max(worst, err)
        if err > 1e-9:
            return _fail(
                "extreme-point-rotation",
                trials,
                f"orthogonality {orth:.3e} / det error {det:.3e} > 1e-9",
                eta,
            )
    return SuiteResult("extreme-point-rotation", True, trials, f"max defect {worst:.3e}")


def _random_state(rng: np.random.Generator, n: int) -> NetworkState:
    agents = []
    for _ in range(n):
        p = rng.uniform(-2.0, 2.0, size=3)
        w = rng.standard_normal(3)
        agents.append(AgentState(p, exp_so3(hat(w))))
    return NetworkState(agents)


def _random_graph(rng: np.random.Generator, n: int) -> FormationGraph:
    edges = []
    for j in range(1, n):
        i = int(rng.integers(0, j))
        edges.append((i, j) if rng.random() < 0.5 else (j, i))
    bearings = rng.standard_normal((len(edges), 3))
    bearings /= np.linalg.norm(bearings, axis=1, keepdims=True)
    return FormationGraph(n, edges, bearings)


def finite_difference_suite(trials: int, seed: int = 103) -> SuiteResult:
    """Both rigidity-matrix blocks must match central differences (rel 1e-5)."""
    trials = min(trials, MAX_FD_TRIALS)
    rng = np.random.default_rng(seed)
    h = 1e-6
    worst = 0.0
    for _ in range(trials):
        n = 4
        g = _random_graph(rng, n)
        s = _random_state(rng, n)
        B = rigidity_matrix(g, s)
        num = np.zeros_like(B)
        for a in range(n):
            for c in range(3):
                plus = s.copy()
                minus = s.copy()
                plus.agents[a].p[c] += h
                minus.agents[a].p[c] -= h
                num[:, 3 * a + c] = (
                    rigidity_function(g, plus) - rigidity_function(g, minus)
                ).ravel() / (2 * h)
        for a in range(n):
            for c in range(3):
                w = np.zeros(3)
                w[c] = 1.0
                plus = s.copy()
                minus = s.copy()
                plus.agents[a].R = geodesic_step(s.agents[a].R, w, h)
                minus.agents[a].R = geodesic_step(s.agents[a].R, w, -h)
                num[:, 3 * (n + a) + c] = (
                    rigidity_function(g, plus) - rigidity_function(g, minus)
                ).ravel() / (2 * h)
        rel = float(np.linalg.norm(num - B) / max(1.0, np.linalg.norm(B)))
        worst = max(worst, rel)
        if rel > 1e-5:
            return _fail("finite-difference", trials, f"relative error {rel:.3e} > 1e-5", s.positions())
    return SuiteResult("finite-difference", True, trials, f"max relative error {worst:.3e}")


def linear_optimality_suite(gen: LiftGenerators, trials: int, seed: int = 104) -> SuiteResult:
    """The eigenstep optimum must dominate randomly sampled rotations."""
    trials = min(trials, MAX_OPT_TRIALS)
    rng = np.random.default_rng(seed)
    n_rot = 1000
    worst = np.inf
    for _ in range(trials):
        M = rng.standard_normal((3, 3))
        sol = solve_linear_lift(gen, M)
        attained = float(np.sum(M * lift_project(gen, sol.Z_star)))
        ws = rng.standard_normal((n_rot, 3))
        best = max(float(np.sum(M * exp_so3(hat(w)))) for w in ws)
        margin = attained - best
        worst = min(worst, margin)
        if margin < -1e-9:
            return _fail(
                "linear-optimality",
                trials,
                f"sampled rotation beats the optimum by {-margin:.3e}",
                M,
            )
    return SuiteResult("linear-optimality", True, trials, f"min margin {worst:.3e}")


def run_suites(gen: LiftGenerators | None = None, trials: int = 100) -> list[SuiteResult]:
    """Run all four suites with at most ``trials`` random draws each."""
    if gen is None:
        gen = default_generators()
    return [
        adjoint_identity_suite(gen, trials),
        extreme_point_suite(gen, trials),
        finite_difference_suite(trials),
        linear_optimality_suite(gen, trials),
    ]
