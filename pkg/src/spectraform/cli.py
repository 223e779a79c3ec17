"""Command-line front end.

Subcommands:
  solve-attitude  one-shot optimal attitude for a single agent of a scenario
  simulate        run the closed loop and export CSV trajectories + SVG plots
  verify          run the built-in randomized property suites

Exit codes: 0 success, 1 verify-suite failure, 2 scenario parse error,
3 invalid agent index, 4 simulation hit max_steps without converging,
5 I/O error, 6 diverged.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .errors import Diverged, ScenarioError
from .export import write_controls_csv, write_potential_csv, write_trajectory_csv
from .lift import default_generators, lift_project
from .scenario import parse_scenario
from .selftest import run_suites
from .sim import alignment_matrix, run
from .solver import solve_linear_lift
from .svgplot import formation_svg, potential_svg

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_PARSE = 2
EXIT_BAD_AGENT = 3
EXIT_MAX_STEPS = 4
EXIT_IO = 5
EXIT_DIVERGED = 6


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") is not None or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _matrix_lines(M: np.ndarray, indent: str = "  ") -> str:
    return "\n".join(
        indent + " ".join(f"{x: .6f}" for x in row) for row in np.asarray(M)
    )


def cmd_solve_attitude(args) -> int:
    try:
        scenario = parse_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if not (1 <= args.agent <= scenario.n_agents):
        print(
            f"error: agent index {args.agent} out of range 1..{scenario.n_agents}",
            file=sys.stderr,
        )
        return EXIT_BAD_AGENT
    gen = default_generators()
    state = scenario.initial_state()
    M = alignment_matrix(scenario.graph(), state, args.agent - 1)
    sol = solve_linear_lift(gen, M)
    print(f"agent {args.agent} optimal attitude (from initial scenario state)")
    print("Z* (rank-1, unit trace):")
    print(_matrix_lines(sol.Z_star))
    print("R* (hull projection of Z*):")
    print(_matrix_lines(lift_project(gen, sol.Z_star)))
    print(f"top eigenvalue: {sol.top_eigenvalue:.9g}")
    print(f"spectral gap:   {sol.spectral_gap:.9g}")
    print(f"unique:         {'yes' if sol.unique else 'no'}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        scenario = parse_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.max_steps is not None:
        scenario.max_steps = args.max_steps
    if args.eps is not None:
        scenario.eps = args.eps
    try:
        cfg = scenario.sim_config()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        traj = run(cfg)
    except Diverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED

    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        write_trajectory_csv(out_dir / "trajectory.csv", traj)
        write_potential_csv(out_dir / "potential.csv", traj)
        write_controls_csv(out_dir / "controls.csv", traj)
        (out_dir / "formation.svg").write_text(
            formation_svg(
                cfg.graph,
                traj.states[0].positions(),
                traj.states[-1].positions(),
                scenario.target_positions,
            )
        )
        (out_dir / "potential.svg").write_text(potential_svg(traj.potentials))
    except OSError as exc:
        path = getattr(exc, "filename", None) or str(out_dir)
        print(f"error: cannot write outputs under {path}: {exc}", file=sys.stderr)
        return EXIT_IO

    steps = traj.n_steps - 1
    print(f"termination: {traj.termination} after {steps} steps")
    print(f"final potential: {traj.potentials[-1]:.6e}")
    print(f"outputs written to {out_dir}")
    if traj.termination != "converged":
        return EXIT_MAX_STEPS
    return EXIT_OK


def cmd_verify(args) -> int:
    trials = 100_000 if args.full else 100
    results = run_suites(trials=trials)
    failed = [r for r in results if not r.passed]
    for r in results:
        status = _color("PASS", "32") if r.passed else _color("FAIL", "31")
        print(f"{status}  {r.name:<24} trials={r.trials:<7} {r.detail}")
    if failed:
        first = failed[0]
        print(f"\nfirst counterexample ({first.name}):", file=sys.stderr)
        print(first.counterexample, file=sys.stderr)
        return EXIT_SUITE_FAILURE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectraform",
        description="Bearing-driven formation control with attitudes optimized "
        "over a spectrahedral relaxation of the rotation group.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser(
        "solve-attitude", help="one-shot optimal attitude for a single agent"
    )
    p_solve.add_argument("scenario", help="scenario JSON file")
    p_solve.add_argument("--agent", type=int, required=True, help="agent index (1-based)")
    p_solve.set_defaults(func=cmd_solve_attitude)

    p_sim = sub.add_parser("simulate", help="run the closed loop and export results")
    p_sim.add_argument("scenario", help="scenario JSON file")
    p_sim.add_argument("--out", required=True, help="output directory")
    p_sim.add_argument("--max-steps", type=int, default=None, help="override file value")
    p_sim.add_argument("--eps", type=float, default=None, help="override file value")
    p_sim.set_defaults(func=cmd_simulate)

    p_verify = sub.add_parser("verify", help="run the randomized property suites")
    group = p_verify.add_mutually_exclusive_group()
    group.add_argument("--fast", action="store_true", help="cap trials at 100 (default)")
    group.add_argument("--full", action="store_true", help="cap trials at 100000")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
