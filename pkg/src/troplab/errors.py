"""Error taxonomy shared by all modules.

The CLI maps these onto exit codes: UsageError -> 1, GuardExceeded -> 2,
InternalCheck -> 3.  A "false" certification verdict is data, never an
exception.
"""


class TropLabError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(TropLabError):
    """Bad arguments or violated operation preconditions."""


class GuardExceeded(TropLabError):
    """A configurable resource guard (set size, field size, ...) was hit."""


class DegenerateCircuit(UsageError):
    """Constant elimination collapsed the circuit to the constant 0."""


class InternalCheck(TropLabError):
    """A self-verification failed; signals a bug, not bad input."""
