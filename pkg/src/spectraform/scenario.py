"""Scenario files: JSON documents that pin down a complete simulation.

Agent indices are 1-based in files (converted at the parse boundary) and
attitudes are stored as axis-angle 3-vectors. Initial positions and attitudes
may be given literally or as ``{"random": {...}}`` specs, which are sampled
once at load time with the recorded seed, so a parsed scenario always holds
concrete arrays and serializes back to an equivalent file.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ScenarioError
from .rigidity import AgentState, FormationGraph, NetworkState
from .sim import INTEGRATORS, SimConfig
from .so3 import exp_so3, hat

_DEFAULT_BOX = [[-2.0, 2.0], [-2.0, 2.0], [-2.0, 2.0]]
_DEFAULTS = {
    "eps": 0.01,
    "w_lin": 1.0,
    "w_ang": 1.0,
    "k_pos": 1.0,
    "tol_potential": 1e-6,
    "max_steps": 50_000,
    "integrator": "geodesic",
    "seed": 0,
}


@dataclass
class Scenario:
    """A fully resolved simulation setup (indices 0-based, arrays concrete)."""

    n_agents: int
    edges: list[tuple[int, int]]
    desired_bearings: np.ndarray
    initial_positions: np.ndarray
    initial_axis_angles: np.ndarray
    eps: float = _DEFAULTS["eps"]
    w_lin: float = _DEFAULTS["w_lin"]
    w_ang: float = _DEFAULTS["w_ang"]
    k_pos: float = _DEFAULTS["k_pos"]
    tol_potential: float = _DEFAULTS["tol_potential"]
    max_steps: int = _DEFAULTS["max_steps"]
    integrator: str = _DEFAULTS["integrator"]
    seed: int = _DEFAULTS["seed"]
    target_positions: np.ndarray | None = None
    description: str = ""

    def graph(self) -> FormationGraph:
        return FormationGraph(self.n_agents, list(self.edges), self.desired_bearings.copy())

    def initial_state(self) -> NetworkState:
        agents = [
            AgentState(p, exp_so3(hat(aa)))
            for p, aa in zip(self.initial_positions, self.initial_axis_angles)
        ]
        return NetworkState(agents, k=0)

    def sim_config(self) -> SimConfig:
        return SimConfig(
            graph=self.graph(),
            initial=self.initial_state(),
            eps=self.eps,
            w_lin=self.w_lin,
            w_ang=self.w_ang,
            k_pos=self.k_pos,
            max_steps=self.max_steps,
            tol_potential=self.tol_potential,
            integrator=self.integrator,
            seed=self.seed,
        )


def _require(doc: dict, key: str, origin: str):
    if key not in doc:
        raise ScenarioError(f"{origin}: missing required key '{key}'")
    return doc[key]


def _as_vectors(value, count: int, key: str, origin: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float)
    except (ValueError, TypeError) as exc:
        raise ScenarioError(f"{origin}: key '{key}' is not numeric: {exc}") from exc
    if arr.shape != (count, 3):
        raise ScenarioError(
            f"{origin}: key '{key}' must be a list of {count} 3-vectors, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ScenarioError(f"{origin}: key '{key}' contains non-finite entries")
    return arr


def _sample_positions(spec: dict, n: int, rng: np.random.Generator, origin: str) -> np.ndarray:
    box = np.asarray(spec.get("box", _DEFAULT_BOX), dtype=float)
    if box.shape != (3, 2):
        raise ScenarioError(f"{origin}: random position box must be 3 [lo, hi] pairs")
    return rng.uniform(box[:, 0], box[:, 1], size=(n, 3))


def _sample_axis_angles(n: int, rng: np.random.Generator) -> np.ndarray:
    # Uniform axis on the sphere, angle uniform in [0, pi).
    axes = rng.standard_normal((n, 3))
    axes /= np.linalg.norm(axes, axis=1, keepdims=True)
    angles = rng.uniform(0.0, np.pi, size=(n, 1))
    return axes * angles


def _resolve_random(value, key: str, origin: str, default_seed: int):
    """Return (spec_dict, seed) when the value requests random sampling, else None."""
    if value == "random":
        return {}, default_seed
    if isinstance(value, dict):
        if set(value) != {"random"} or not isinstance(value["random"], dict):
            raise ScenarioError(f"{origin}: key '{key}' dict form must be {{'random': {{...}}}}")
        spec = value["random"]
        return spec, int(spec.get("seed", default_seed))
    return None


def scenario_from_dict(doc: dict, origin: str = "<dict>") -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError(f"{origin}: top level must be a JSON object")
    n = int(_require(doc, "agents", origin))
    if n < 1:
        raise ScenarioError(f"{origin}: 'agents' must be at least 1")

    raw_edges = _require(doc, "edges", origin)
    if not isinstance(raw_edges, list):
        raise ScenarioError(f"{origin}: 'edges' must be a list of [i, j] pairs")
    edges: list[tuple[int, int]] = []
    for k, pair in enumerate(raw_edges):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ScenarioError(f"{origin}: edge {k} must be a pair [i, j]")
        i, j = int(pair[0]), int(pair[1])
        if not (1 <= i <= n and 1 <= j <= n):
            raise ScenarioError(
                f"{origin}: edge {k} = [{i}, {j}] out of range for {n} agents (indices are 1-based)"
            )
        if i == j:
            raise ScenarioError(f"{origin}: edge {k} is a self-loop at agent {i}")
        edges.append((i - 1, j - 1))

    raw_b = _require(doc, "desired_bearings", origin)
    if not isinstance(raw_b, list) or len(raw_b) != len(edges):
        count = len(raw_b) if isinstance(raw_b, list) else 0
        raise ScenarioError(
            f"{origin}: desired_bearings count {count} does not match edge count {len(edges)}"
        )
    bearings = _as_vectors(raw_b, len(edges), "desired_bearings", origin)
    norms = np.linalg.norm(bearings, axis=1)
    if np.any(norms <= 0.0):
        raise ScenarioError(f"{origin}: desired bearing with zero norm")
    off_unit = np.abs(norms - 1.0)
    worst = float(off_unit.max())
    if worst > 1e-6:
        warnings.warn(
            f"{origin}: desired bearings off unit norm by up to {worst:.3e}; normalizing",
            stacklevel=2,
        )
    # Normalize only rows that need it, so an already-normalized scenario
    # round-trips bit for bit.
    fix = off_unit > 1e-12
    if np.any(fix):
        bearings = bearings.copy()
        bearings[fix] = bearings[fix] / norms[fix, None]

    seed = int(doc.get("seed", _DEFAULTS["seed"]))

    raw_pos = _require(doc, "initial_positions", origin)
    rand = _resolve_random(raw_pos, "initial_positions", origin, seed)
    if rand is not None:
        spec, pos_seed = rand
        positions = _sample_positions(spec, n, np.random.default_rng(pos_seed), origin)
    else:
        positions = _as_vectors(raw_pos, n, "initial_positions", origin)

    raw_att = _require(doc, "initial_attitudes", origin)
    rand = _resolve_random(raw_att, "initial_attitudes", origin, seed + 1)
    if rand is not None:
        _, att_seed = rand
        axis_angles = _sample_axis_angles(n, np.random.default_rng(att_seed))
    else:
        axis_angles = _as_vectors(raw_att, n, "initial_attitudes", origin)

    target = doc.get("target_positions")
    target_arr = None if target is None else _as_vectors(target, n, "target_positions", origin)

    params = {}
    for key in ("eps", "w_lin", "w_ang", "k_pos", "tol_potential"):
        params[key] = float(doc.get(key, _DEFAULTS[key]))
    max_steps = int(doc.get("max_steps", _DEFAULTS["max_steps"]))
    integrator = str(doc.get("integrator", _DEFAULTS["integrator"]))
    if integrator not in INTEGRATORS:
        raise ScenarioError(f"{origin}: integrator must be one of {INTEGRATORS}, got '{integrator}'")

    scenario = Scenario(
        n_agents=n,
        edges=edges,
        desired_bearings=bearings,
        initial_positions=positions,
        initial_axis_angles=axis_angles,
        max_steps=max_steps,
        integrator=integrator,
        seed=seed,
        target_positions=target_arr,
        description=str(doc.get("description", "")),
        **params,
    )
    try:
        scenario.graph()
        scenario.sim_config()
    except ValueError as exc:
        raise ScenarioError(f"{origin}: {exc}") from exc
    return scenario


def parse_scenario(path) -> Scenario:
    """Load and validate a scenario file. Raises ScenarioError on any defect."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioError(f"{path}: cannot read scenario file: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"{path}: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return scenario_from_dict(doc, origin=str(path))


def scenario_to_dict(s: Scenario) -> dict:
    """Serialize back to the file layout (1-based edges, resolved arrays)."""
    doc = {
        "description": s.description,
        "agents": s.n_agents,
        "edges": [[i + 1, j + 1] for i, j in s.edges],
        "desired_bearings": s.desired_bearings.tolist(),
        "initial_positions": s.initial_positions.tolist(),
        "initial_attitudes": s.initial_axis_angles.tolist(),
        "eps": s.eps,
        "w_lin": s.w_lin,
        "w_ang": s.w_ang,
        "k_pos": s.k_pos,
        "tol_potential": s.tol_potential,
        "max_steps": s.max_steps,
        "integrator": s.integrator,
        "seed": s.seed,
    }
    if s.target_positions is not None:
        doc["target_positions"] = s.target_positions.tolist()
    return doc


def save_scenario(s: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(s), indent=2) + "\n")


def bundled_scenario_path(name: str) -> Path:
    """Filesystem path of a bundled scenario ('two_agents' or 'seven_agents')."""
    ref = resources.files("spectraform") / "scenarios" / f"{name}.json"
    return Path(str(ref))
