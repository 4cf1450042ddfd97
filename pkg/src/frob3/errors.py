"""Exception types shared across the package."""


class FrobeniusError(Exception):
    """Base class for all package errors."""


class InputError(FrobeniusError):
    """Rejected user input: bad generators, wrong branch, out-of-range flag."""


class NonInvertibleError(FrobeniusError):
    """Modular inverse requested for a non-coprime pair."""


class StructureViolation(FrobeniusError):
    """A runtime-validated structural guarantee of the case analysis failed.

    Raised instead of asserting because these guarantees are checked, not
    assumed: callers fall back to the residue-table evaluator and report the
    event, so the final answer stays correct either way.
    """


class WalkExhausted(FrobeniusError):
    """The predicted next local minimum lies beyond the end of the walk."""


class MemoryCapExceeded(FrobeniusError):
    """A brute-force table would exceed the configured memory cap."""
