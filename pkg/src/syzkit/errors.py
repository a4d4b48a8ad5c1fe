"""Exception types shared across the package."""


class SyzkitError(Exception):
    pass


class ParseError(SyzkitError):
    """Malformed input file or polynomial expression."""


class HomogeneityError(SyzkitError):
    """A polynomial that must be homogeneous is not."""


class DegreeBoundError(SyzkitError):
    """A computation needs internal degrees above the ring's degree bound.

    Carries the first offending degree so the caller can raise the bound.
    """

    def __init__(self, needed, bound, context=""):
        self.needed = needed
        self.bound = bound
        msg = f"internal degree {needed} exceeds degree bound {bound}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class WindowError(SyzkitError):
    """A homological window is too small for the requested computation."""
