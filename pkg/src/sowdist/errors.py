"""Exception types shared across the package."""


class InfeasibleError(RuntimeError):
    """A requested enumeration or expansion exceeds its configured size limit."""


class VerificationError(AssertionError):
    """An oracle comparison disagreed with a closed-form result."""
