"""Exception hierarchy shared by all modules.

The CLI maps these to exit codes: input problems exit with 2, broken
algorithmic invariants exit with 3.
"""


class InputError(ValueError):
    """Malformed, disconnected or otherwise unusable input."""


class SizeLimitError(InputError):
    """An exhaustive routine was asked to run above its size cap."""


class NoWitnessError(InputError):
    """A witness was requested for a pair that does not admit one."""


class InvariantViolation(RuntimeError):
    """A property guaranteed for the declared graph class failed at runtime.

    Usually this means the input does not belong to the class the solver
    was invoked for.
    """


class ContractError(InvariantViolation):
    """An improvement step returned a vertex that does not improve."""


class GenerationError(RuntimeError):
    """A generated instance failed certification by its recognizer."""
