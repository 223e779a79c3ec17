"""Discrete-time closed loop.

Each step synthesizes per-agent controls, then integrates the rigid-body
kinematics. Attitudes are driven through lift space: the current attitude is
lifted to its rank-1 point, shifted along the lifted alignment cost by an
energy-weighted proximal step, projected back to the nearest rotation, and
converted into a body-frame angular rate. Positions descend the bearing
potential through the rigidity Jacobian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Diverged
from .lift import default_generators, lift_adjoint, lift_project
from .rigidity import (
    AgentState,
    FormationGraph,
    NetworkState,
    position_gradient,
    potential,
)
from .so3 import geodesic_step, hat, log_so3, project_to_so3, vee
from .solver import StepProblem, solve_lift_cost, solve_regularized_step

INTEGRATORS = ("geodesic", "first_order")


@dataclass
class SimConfig:
    """Closed-loop parameters.

    ``eps`` is the step size, ``w_lin``/``w_ang`` the scalar control-energy
    weights (larger means slower motion), ``k_pos`` the position descent
    gain, and ``seed`` records the seed used for any randomized
    initialization of the scenario that produced ``initial``.
    """

    graph: FormationGraph
    initial: NetworkState
    eps: float = 0.01
    w_lin: float = 1.0
    w_ang: float = 1.0
    k_pos: float = 1.0
    max_steps: int = 50_000
    tol_potential: float = 1e-6
    integrator: str = "geodesic"
    seed: int = 0

    def __post_init__(self):
        if not self.eps > 0.0:
            raise ValueError("eps must be positive")
        if not self.tol_potential > 0.0:
            raise ValueError("tol_potential must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        if not (self.w_lin > 0.0 and self.w_ang > 0.0):
            raise ValueError("energy weights must be positive")
        if self.integrator not in INTEGRATORS:
            raise ValueError(f"integrator must be one of {INTEGRATORS}")
        if len(self.initial.agents) != self.graph.n_agents:
            raise ValueError(
                f"initial state has {len(self.initial.agents)} agents, "
                f"graph expects {self.graph.n_agents}"
            )


@dataclass
class ControlRecord:
    """Per-agent controls for one step.

    ``v`` and ``omega`` are body-frame rates, shape (n, 3). ``lifted`` holds
    the realized lift-space rates (Z_next - Z_prev) / eps as a diagnostic,
    and ``objectives`` the linear alignment objective attained at each
    agent's stepped lift point.
    """

    v: np.ndarray
    omega: np.ndarray
    lifted: np.ndarray
    objectives: np.ndarray


@dataclass
class Trajectory:
    """Recorded closed-loop run: one entry per step, including the last state."""

    states: list[NetworkState]
    controls: list[ControlRecord]
    potentials: np.ndarray
    v_norms: np.ndarray
    w_norms: np.ndarray
    termination: str = "max_steps"

    @property
    def n_steps(self) -> int:
        return len(self.states)


def alignment_matrix(g: FormationGraph, s: NetworkState, agent: int) -> np.ndarray:
    """3x3 alignment input for one agent: sum over its measured edges of the
    outer product of the world-frame edge direction with the desired bearing.

    Maximizing <alignment_matrix, R> over rotations aligns the agent's
    measured bearings with their targets.
    """
    M = np.zeros((3, 3))
    for k, (i, j) in enumerate(g.edges):
        if i != agent:
            continue
        diff = s.agents[i].p - s.agents[j].p
        dist = float(np.linalg.norm(diff))
        M += np.outer(diff / dist, g.desired_bearings[k])
    return M


def lift_attitude(R) -> np.ndarray:
    """Rank-1 lift point of a rotation.

    The top eigenvector of the adjoint image of R spans the (sign-ambiguous)
    lift ray of R; the projector eta @ eta.T is sign-free and projects back
    to R.
    """
    gen = default_generators()
    eta = solve_lift_cost(lift_adjoint(gen, np.asarray(R, dtype=float))).eta
    return np.outer(eta, eta)


def control_step(cfg: SimConfig, s: NetworkState) -> ControlRecord:
    """Synthesize one step of controls for every agent.

    Attitude: proximal step on the lifted alignment objective with movement
    penalty w_ang, hull projection, nearest-rotation projection, then the
    relative-rotation log scaled by 1/eps. Position: gradient descent on the
    bearing potential, rotated into the body frame.
    """
    gen = default_generators()
    g = cfg.graph
    n = g.n_agents
    grad = position_gradient(g, s)
    v = np.zeros((n, 3))
    omega = np.zeros((n, 3))
    lifted = np.zeros((n, 4, 4))
    objectives = np.zeros(n)
    for i, agent in enumerate(s.agents):
        C = lift_adjoint(gen, alignment_matrix(g, s, i))
        Z_prev = lift_attitude(agent.R)
        Z_next = solve_regularized_step(StepProblem(C, Z_prev, cfg.w_ang, cfg.eps))
        R_target = project_to_so3(lift_project(gen, Z_next))
        omega[i] = vee(log_so3(agent.R.T @ R_target)) / cfg.eps
        lifted[i] = (Z_next - Z_prev) / cfg.eps
        objectives[i] = float(np.sum(C * Z_next))
        v[i] = -(cfg.k_pos / cfg.w_lin) * (agent.R.T @ grad[i])
    return ControlRecord(v=v, omega=omega, lifted=lifted, objectives=objectives)


def integrate(cfg: SimConfig, s: NetworkState, u: ControlRecord) -> NetworkState:
    """Advance the state one step under body-frame controls.

    Positions follow p + eps * R v. Attitudes follow the geodesic step in
    ``geodesic`` mode (stays on SO(3) exactly) or the projected first-order
    update in ``first_order`` mode.
    """
    agents = []
    for i, a in enumerate(s.agents):
        p_new = a.p + cfg.eps * (a.R @ u.v[i])
        if cfg.integrator == "geodesic":
            R_new = geodesic_step(a.R, u.omega[i], cfg.eps)
        else:
            R_new = project_to_so3(a.R + cfg.eps * (a.R @ hat(u.omega[i])))
        agents.append(AgentState(p_new, R_new))
    return NetworkState(agents, k=s.k + 1)


def run(cfg: SimConfig) -> Trajectory:
    """Iterate control and integration until the potential converges.

    Every step is recorded, including the terminal one. Terminates with
    ``converged`` when the potential reaches tol_potential, with
    ``max_steps`` otherwise; raises Diverged if the potential exceeds 1e6
    times its initial value.
    """
    g = cfg.graph
    s = cfg.initial
    states: list[NetworkState] = []
    controls: list[ControlRecord] = []
    pots: list[float] = []
    v_norms: list[np.ndarray] = []
    w_norms: list[np.ndarray] = []
    phi0 = None
    termination = "max_steps"
    for step in range(cfg.max_steps + 1):
        phi = potential(g, s)
        if phi0 is None:
            phi0 = phi
        u = control_step(cfg, s)
        states.append(s)
        controls.append(u)
        pots.append(phi)
        v_norms.append(np.linalg.norm(u.v, axis=1))
        w_norms.append(np.linalg.norm(u.omega, axis=1))
        if phi <= cfg.tol_potential:
            termination = "converged"
            break
        if phi > 1e6 * max(phi0, np.finfo(float).tiny):
            raise Diverged(step, phi, phi0)
        if step == cfg.max_steps:
            break
        s = integrate(cfg, s, u)
    return Trajectory(
        states=states,
        controls=controls,
        potentials=np.array(pots),
        v_norms=np.array(v_norms),
        w_norms=np.array(w_norms),
        termination=termination,
    )
