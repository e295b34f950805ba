"""Shared exception types.

The CLI maps these to exit codes: FixtureError -> 2 (bad input),
VerificationFailure -> 1 (a checked claim is false),
InternalInvariantError -> 3 (a bug: two independent computations disagree).
"""


class FixtureError(ValueError):
    """Input data violates a schema or a declared invariant."""


class VerificationFailure(AssertionError):
    """A verification suite found a failing claim."""


class InternalInvariantError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


class StabilizationError(RuntimeError):
    """Local cohomology window did not stabilize at the given exponent."""
