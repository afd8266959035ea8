"""Exception hierarchy for monoconv.

Numerical breakdowns get their own classes so callers (and the CLI exit-code
mapping) can tell a bad input from a computation that genuinely failed.
"""


class MonoconvError(Exception):
    """Base class for all monoconv errors."""


class PoleAt(MonoconvError):
    """Evaluation requested at (or too close to) a pole."""

    def __init__(self, position, message=None):
        self.position = position
        super().__init__(message or f"evaluation at pole x={position!r}")


class ZeroG(MonoconvError):
    """Cauchy transform vanished; reciprocal transform undefined."""


class GridTooCoarse(MonoconvError):
    """Stieltjes inversion failed to stabilise on too many grid points."""


class AtomCollision(MonoconvError):
    """Atoms merged where theory guarantees distinctness (numerical breakdown)."""


class InfiniteVariance(MonoconvError):
    """Finite-variance representation requested for a measure without one."""


class DivergentMoment(MonoconvError):
    """Requested moment does not exist under the stored representation."""


class CaseMismatch(MonoconvError):
    """Vector-field case does not support the requested tracking operation."""


class UnboundedBelowTau(MonoconvError):
    """Levy measure is unbounded below (or empty) where a finite edge is needed."""


class StepUnderflow(MonoconvError):
    """Adaptive integrator step shrank below resolution."""


class BranchCutHit(MonoconvError):
    """An intermediate complex power landed on the branch cut."""


class UnnormalizedB(MonoconvError):
    """Stable support table requires the normalized parameter b (+1 or -1)."""


class ZeroVariance(MonoconvError):
    """Divisibility bound undefined for a zero-variance representation."""
