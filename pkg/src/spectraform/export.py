"""CSV emission and re-parsing of recorded trajectories.

Numeric fields are written with 17 significant digits so that re-parsing
reproduces the in-memory float64 values exactly. Agent indices in files are
1-based, matching the scenario file convention.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .sim import Trajectory

TRAJECTORY_HEADER = (
    ["step", "agent", "px", "py", "pz"]
    + [f"R{r}{c}" for r in range(3) for c in range(3)]
    + ["vx", "vy", "vz", "wx", "wy", "wz", "potential"]
)


def _fmt(x) -> str:
    return format(float(x), ".17g")


def write_trajectory_csv(path, traj: Trajectory) -> None:
    """One row per agent per recorded step; rotation entries are row-major."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRAJECTORY_HEADER)
        for step, (state, ctrl) in enumerate(zip(traj.states, traj.controls)):
            phi = traj.potentials[step]
            for i, agent in enumerate(state.agents):
                row = [step, i + 1]
                row += [_fmt(x) for x in agent.p]
                row += [_fmt(x) for x in agent.R.ravel()]
                row += [_fmt(x) for x in ctrl.v[i]]
                row += [_fmt(x) for x in ctrl.omega[i]]
                row.append(_fmt(phi))
                writer.writerow(row)


def write_potential_csv(path, traj: Trajectory) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "potential"])
        for step, phi in enumerate(traj.potentials):
            writer.writerow([step, _fmt(phi)])


def write_controls_csv(path, traj: Trajectory) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["step", "agent", "vx", "vy", "vz", "wx", "wy", "wz", "v_norm", "w_norm"]
        )
        for step, ctrl in enumerate(traj.controls):
            for i in range(ctrl.v.shape[0]):
                row = [step, i + 1]
                row += [_fmt(x) for x in ctrl.v[i]]
                row += [_fmt(x) for x in ctrl.omega[i]]
                row += [_fmt(traj.v_norms[step, i]), _fmt(traj.w_norms[step, i])]
                writer.writerow(row)


def read_trajectory_csv(path) -> dict:
    """Parse a trajectory CSV back into flat arrays keyed by column group."""
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != TRAJECTORY_HEADER:
            raise ValueError(f"unexpected trajectory header: {header}")
        rows = [row for row in reader]
    data = np.array([[float(x) for x in row] for row in rows])
    return {
        "step": data[:, 0].astype(int),
        "agent": data[:, 1].astype(int),
        "p": data[:, 2:5],
        "R": data[:, 5:14].reshape(-1, 3, 3),
        "v": data[:, 14:17],
        "w": data[:, 17:20],
        "potential": data[:, 20],
    }
