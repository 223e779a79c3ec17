"""Bearing-driven formation control for rigid-body agents, with per-step
attitudes optimized in closed form over a spectrahedral relaxation of the
rotation group."""

from .errors import (
    CoincidentAgents,
    Degenerate,
    Diverged,
    NotSkew,
    NotSPD,
    ScenarioError,
)
from .jacobi import symmetric_eig
from .lift import (
    LiftGenerators,
    MembershipReport,
    build_generators,
    default_generators,
    is_extreme,
    is_member,
    lift_adjoint,
    lift_project,
)
from .rigidity import (
    AgentState,
    FormationGraph,
    NetworkState,
    attitude_gradient,
    augmented_potential,
    bearing,
    position_gradient,
    potential,
    rigidity_function,
    rigidity_matrix,
)
from .scenario import (
    Scenario,
    bundled_scenario_path,
    parse_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
)
from .sim import (
    ControlRecord,
    SimConfig,
    Trajectory,
    alignment_matrix,
    control_step,
    integrate,
    lift_attitude,
    run,
)
from .so3 import (
    exp_approx,
    exp_so3,
    geodesic_step,
    hat,
    log_so3,
    project_to_so3,
    rotation_defect,
    vee,
)
from .solver import (
    LinearLiftSolution,
    StepProblem,
    certify_unique,
    project_simplex,
    project_spectrahedron,
    solve_lift_cost,
    solve_linear_lift,
    solve_regularized_step,
)

__version__ = "0.1.0"
