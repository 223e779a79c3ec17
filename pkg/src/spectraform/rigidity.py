"""Formation graphs, body-frame bearing measurements, their stacked Jacobian,
and the scalar mismatch potentials used as control objectives."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CoincidentAgents, NotSPD
from .so3 import hat

MIN_SEPARATION = 1e-9


@dataclass
class AgentState:
    """Pose of one agent: world position p (meters) and attitude R."""

    p: np.ndarray
    R: np.ndarray

    def __post_init__(self):
        self.p = np.asarray(self.p, dtype=float).reshape(3)
        self.R = np.asarray(self.R, dtype=float).reshape(3, 3)

    def copy(self) -> "AgentState":
        return AgentState(self.p.copy(), self.R.copy())


@dataclass
class NetworkState:
    """Poses of all agents at discrete time index k."""

    agents: list[AgentState]
    k: int = 0

    def __len__(self) -> int:
        return len(self.agents)

    def positions(self) -> np.ndarray:
        return np.array([a.p for a in self.agents])

    def copy(self) -> "NetworkState":
        return NetworkState([a.copy() for a in self.agents], self.k)


@dataclass
class FormationGraph:
    """Directed measurement graph with one desired bearing per edge.

    ``edges[k] = (i, j)`` means agent i measures agent j. The derived
    incidence matrix puts +1 at the measuring agent and -1 at the measured
    one, so ``incidence.T @ p`` stacks the differences p_i - p_j in edge
    order; ``measuring`` is the 0/1 selector of the measuring agent, the only
    agent whose attitude a given bearing depends on.
    """

    n_agents: int
    edges: list[tuple[int, int]]
    desired_bearings: np.ndarray
    incidence: np.ndarray = field(init=False, repr=False)
    measuring: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.edges = [(int(i), int(j)) for i, j in self.edges]
        self.desired_bearings = np.asarray(self.desired_bearings, dtype=float).reshape(-1, 3)
        if self.desired_bearings.shape[0] != len(self.edges):
            raise ValueError(
                f"desired_bearings count {self.desired_bearings.shape[0]} "
                f"does not match edge count {len(self.edges)}"
            )
        for k, (i, j) in enumerate(self.edges):
            if i == j:
                raise ValueError(f"edge {k} is a self-loop at agent {i}")
            if not (0 <= i < self.n_agents and 0 <= j < self.n_agents):
                raise ValueError(f"edge {k} = ({i}, {j}) out of range for {self.n_agents} agents")
            norm_err = abs(float(np.linalg.norm(self.desired_bearings[k])) - 1.0)
            if norm_err > 1e-12:
                raise ValueError(f"desired bearing {k} is off unit norm by {norm_err:.3e}")
        self.incidence = np.zeros((self.n_agents, len(self.edges)))
        self.measuring = np.zeros((self.n_agents, len(self.edges)))
        for k, (i, j) in enumerate(self.edges):
            self.incidence[i, k] = 1.0
            self.incidence[j, k] = -1.0
            self.measuring[i, k] = 1.0

    @property
    def m(self) -> int:
        return len(self.edges)


def _edge_vector(s: NetworkState, i: int, j: int, edge: int | None = None):
    diff = s.agents[i].p - s.agents[j].p
    dist = float(np.linalg.norm(diff))
    if dist <= MIN_SEPARATION:
        raise CoincidentAgents(i, j, dist, edge=edge)
    return diff / dist, dist


def bearing(state_i: AgentState, state_j: AgentState) -> np.ndarray:
    """Unit vector from agent j toward agent i, in i's body frame.

    Raises CoincidentAgents below the minimum separation; the bearing is
    deliberately not regularized there.
    """
    diff = state_i.p - state_j.p
    dist = float(np.linalg.norm(diff))
    if dist <= MIN_SEPARATION:
        raise CoincidentAgents(distance=dist)
    return state_i.R.T @ (diff / dist)


def rigidity_function(g: FormationGraph, s: NetworkState) -> np.ndarray:
    """Stack of all edge bearings, shape (m, 3), in edge-list order."""
    out = np.empty((g.m, 3))
    for k, (i, j) in enumerate(g.edges):
        u, _ = _edge_vector(s, i, j, edge=k)
        out[k] = s.agents[i].R.T @ u
    return out


def rigidity_matrix(g: FormationGraph, s: NetworkState) -> np.ndarray:
    """Jacobian of the bearing stack, shape (3m, 6n).

    Columns are ordered as all positions then all attitudes. The attitude
    columns are taken with respect to body-frame perturbations R -> R @
    exp(t * hat(w)); in that convention the per-edge attitude block is simply
    hat(b) at the measuring agent. The position block for edge (i, j) is
    +/- (1/d) R_i^T (I - u u^T) at agents i/j, with u the world-frame unit
    vector from j to i.
    """
    n = g.n_agents
    B = np.zeros((3 * g.m, 6 * n))
    I3 = np.eye(3)
    for k, (i, j) in enumerate(g.edges):
        u, dist = _edge_vector(s, i, j, edge=k)
        Ri = s.agents[i].R
        block = (Ri.T @ (I3 - np.outer(u, u))) / dist
        rows = slice(3 * k, 3 * k + 3)
        B[rows, 3 * i : 3 * i + 3] = block
        B[rows, 3 * j : 3 * j + 3] = -block
        B[rows, 3 * (n + i) : 3 * (n + i) + 3] = hat(Ri.T @ u)
    return B


def potential(g: FormationGraph, s: NetworkState) -> float:
    """Half the squared mismatch between desired and current bearings.

    Zero exactly when every bearing matches its target; invariant under a
    common rotation/translation of all agents and under uniform scaling of
    the positions.
    """
    diff = g.desired_bearings - rigidity_function(g, s)
    return 0.5 * float(np.sum(diff * diff))


def position_gradient(g: FormationGraph, s: NetworkState) -> np.ndarray:
    """Gradient of the potential with respect to all positions, shape (n, 3).

    Read off the position block of the rigidity matrix applied to the bearing
    residual.
    """
    B = rigidity_matrix(g, s)
    resid = (rigidity_function(g, s) - g.desired_bearings).ravel()
    return (B[:, : 3 * g.n_agents].T @ resid).reshape(g.n_agents, 3)


def attitude_gradient(g: FormationGraph, s: NetworkState) -> np.ndarray:
    """Gradient with respect to body-frame attitude perturbations, shape (n, 3)."""
    B = rigidity_matrix(g, s)
    resid = (rigidity_function(g, s) - g.desired_bearings).ravel()
    return (B[:, 3 * g.n_agents :].T @ resid).reshape(g.n_agents, 3)


def _check_spd(name: str, W: np.ndarray) -> None:
    if float(np.linalg.norm(W - W.T)) > 1e-12:
        raise NotSPD(f"{name} is not symmetric")
    try:
        np.linalg.cholesky(W)
    except np.linalg.LinAlgError:
        raise NotSPD(f"{name} is not positive definite") from None


def augmented_potential(
    g: FormationGraph,
    s: NetworkState,
    v,
    omega,
    W1,
    W2,
) -> float:
    """Bearing potential plus quadratic control energy.

    ``v`` and ``omega`` are (n, 3) body-frame control stacks; W1 and W2 are
    3x3 SPD weights on the linear and angular terms. Raises NotSPD when a
    weight fails the symmetry or Cholesky check.
    """
    W1 = np.asarray(W1, dtype=float)
    W2 = np.asarray(W2, dtype=float)
    _check_spd("W1", W1)
    _check_spd("W2", W2)
    v = np.asarray(v, dtype=float).reshape(len(s.agents), 3)
    omega = np.asarray(omega, dtype=float).reshape(len(s.agents), 3)
    energy = 0.5 * float(np.einsum("aj,jk,ak->", v, W1, v))
    energy += 0.5 * float(np.einsum("aj,jk,ak->", omega, W2, omega))
    return potential(g, s) + energy
