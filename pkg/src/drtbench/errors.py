"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter violates a documented constraint (shift range, pair sum, ...)."""


class SizeLimitError(ValueError):
    """An exhaustive operation was requested for a word width that is too large."""


class NotInvertibleError(ValueError):
    """The requested map is singular over GF(2) and has no inverse."""


class FixtureError(ValueError):
    """A fixture file is missing or malformed."""
