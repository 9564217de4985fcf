class IdentityViolation(AssertionError):
    """Two independent evaluations of the same quantity disagree."""


class InstanceTooLarge(ValueError):
    """An exhaustive enumeration would exceed its tuple budget."""


class Inconclusive(RuntimeError):
    """A formal k-sum did not stabilize within the allowed cutoff."""
