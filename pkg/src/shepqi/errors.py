"""Exception hierarchy shared by all shepqi modules.

The CLI maps these onto distinct exit codes, so keep the split stable:
bad user data vs. an unsatisfiable mesh condition vs. a broken internal
invariant.
"""


class ShepqiError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(ShepqiError, ValueError):
    """Malformed user input: bad samples, gap indices, parameters, CSV rows."""


class MeshConditionError(ShepqiError, RuntimeError):
    """A mesh precondition fails, e.g. the requested window degree does not
    fit between the jumps."""


class InternalInvariantError(ShepqiError, AssertionError):
    """A construction produced something the theory forbids.  Indicates a bug
    or a pathological mesh slipping past the preconditions."""
