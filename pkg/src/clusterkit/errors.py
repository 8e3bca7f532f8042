"""Exception hierarchy.

Two families matter to callers: ``InputError`` (bad files, bad arguments,
bad graph data) and ``NumericalError`` (singular systems, divergence,
underflow policy violations). The CLI maps them to exit codes 1 and 2.
"""


class ClusterKitError(Exception):
    """Base class for all clusterkit errors."""


class InputError(ClusterKitError):
    """Invalid input data or arguments."""


class NumericalError(ClusterKitError):
    """Numerical failure or refusal on numerical-safety grounds."""


# --- parsing: edge lists ---------------------------------------------------


class MalformedLineError(InputError):
    """A line of an edge-list file could not be tokenized as integers."""


class SelfLoopError(InputError):
    """An edge joins a node to itself."""


class EndpointOutOfRangeError(InputError):
    """An edge endpoint lies outside [0, node_count)."""


class EmptyInputError(InputError):
    """No node count is derivable from the input."""


# --- parsing: sparse coordinate matrices -----------------------------------


class BadHeaderError(InputError):
    """Missing or unsupported coordinate-format header or size line."""


class NotSquareError(InputError):
    """A declared matrix has differing row and column counts."""


class NegativeEntryError(InputError):
    """A weight entry is negative."""


class RowSumNotSubstochasticError(InputError):
    """A row of a weight matrix sums to 1 or more."""


# --- graph construction and generators -------------------------------------


class InvalidGraphError(InputError):
    """A graph or matrix violates a structural invariant."""


class BadProbabilityError(InputError):
    """An edge probability lies outside [0, 1]."""


class BadPartitionError(InputError):
    """The requested part count does not divide the node count."""


# --- matrix arithmetic ------------------------------------------------------


class DimensionMismatchError(InputError):
    """Operands have incompatible dimensions."""


class DomainMismatchError(InputError):
    """Operands have different scalar domains, or an unsupported one."""


class IndexOutOfRangeError(InputError):
    """A node index lies outside [0, k)."""


class SingularMatrixError(NumericalError):
    """The matrix has no inverse (zero or below-threshold pivot)."""


class NoConvergenceError(NumericalError):
    """The geometric-series iteration hit its term limit above tolerance."""


class UnderflowSuspectedError(NumericalError):
    """Float arithmetic cannot distinguish tiny path weights from zero."""


class NotSubstochasticError(NumericalError):
    """A transition block fails the substochasticity convergence check."""


class BoundViolatedError(NumericalError):
    """A rescaled row sums to 1 or more, indicating a transform bug."""


# --- benchmarking ------------------------------------------------------------


class InvalidBenchSpecError(InputError):
    """A benchmark configuration fails validation."""


class EngineUnavailableError(NumericalError):
    """An engine refuses the requested size under its safety policy."""


class BenchmarkDisagreementError(NumericalError):
    """Engines produced different cluster sizes for the same graph."""
