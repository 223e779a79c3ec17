"""Exception types shared across the package."""


class NotSkew(ValueError):
    """Matrix expected to be skew-symmetric is not, beyond tolerance."""


class Degenerate(ValueError):
    """Matrix is too close to singular for a stable polar decomposition."""


class NotSPD(ValueError):
    """Weight matrix is not symmetric positive definite."""


class CoincidentAgents(ValueError):
    """Two agents are closer than the minimum separation; bearing undefined."""

    def __init__(self, i=None, j=None, distance=0.0, edge=None):
        self.i = i
        self.j = j
        self.distance = distance
        self.edge = edge
        who = f"agents {i} and {j}" if i is not None else "agent pair"
        where = f" (edge {edge})" if edge is not None else ""
        super().__init__(
            f"{who} are {distance:.3e} m apart{where}; "
            f"bearings are undefined below the minimum separation"
        )


class Diverged(RuntimeError):
    """Simulation potential blew up past the divergence guard."""

    def __init__(self, step, value, initial):
        self.step = step
        self.value = value
        self.initial = initial
        super().__init__(
            f"potential {value:.3e} at step {step} exceeds 1e6 x initial value {initial:.3e}"
        )


class ScenarioError(ValueError):
    """Scenario file failed to parse or validate."""
