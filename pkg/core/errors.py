class SelfDualError(Exception):
    """Base class for every error raised by the library."""


class FieldMismatchError(SelfDualError, ValueError):
    """Operands belong to different finite fields."""


class PreconditionError(SelfDualError, ValueError):
    """An operation was called outside its documented domain."""


class DomainError(SelfDualError, ValueError):
    """The inputs are well formed but the requested object does not exist."""


class HypothesisError(PreconditionError):
    """A proposition's hypotheses do not hold for the given parameters."""

    def __init__(self, case: str, condition: str):
        self.case = case
        self.condition = condition
        super().__init__(f"{case}: hypothesis failed: {condition}")


class GuardExceededError(SelfDualError, RuntimeError):
    """An exhaustive search would exceed the configured ceiling."""

    def __init__(self, what: str, required: int, guard: int):
        self.what = what
        self.required = required
        self.guard = guard
        super().__init__(
            f"{what} needs {required} candidates, above the guard {guard}; "
            f"rerun with --guard {required} or larger"
        )


class ConsistencyError(SelfDualError, RuntimeError):
    """An internal invariant failed; this indicates a bug, not bad input."""
