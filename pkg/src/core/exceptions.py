"""Exception hierarchy shared by services, the CLI and the HTTP API."""

from typing import Optional

import numpy as np


class ToricLabError(Exception):
    """Base class for all domain errors."""


class NetworkValidationError(ToricLabError, ValueError):
    """Malformed network or rate file, self-loop, duplicate edge or complex."""


class SingularTransformError(ToricLabError, ValueError):
    """Affine map is not invertible or collapses two complexes."""


class NotWeaklyReversibleError(ToricLabError):
    """Operation requires every linkage class to be strongly connected."""


class TreeEnumerationError(ToricLabError):
    """Spanning in-tree enumeration refused (class too large, root unreachable)."""


class NotInToricLocusError(ToricLabError):
    """Rate vector does not admit a complex balanced equilibrium."""


class UnbalancedFluxError(ToricLabError, ValueError):
    """Flux vector violates vertex in/out balance."""


class InternalConsistencyError(ToricLabError):
    """Two independent computations of the same quantity disagree."""


class StepUnderflowError(ToricLabError):
    """Integrator step would leave the positive orthant; reduce dt."""

    def __init__(self, message: str, t: float, state: np.ndarray) -> None:
        super().__init__(message)
        self.t = t
        self.state = state


class ConvergenceError(ToricLabError):
    """Iterative solver did not converge."""

    def __init__(self, message: str, last_iterate: Optional[np.ndarray] = None) -> None:
        super().__init__(message)
        self.last_iterate = last_iterate
