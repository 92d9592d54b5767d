"""Exception types shared across the package."""


class SchubvanError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(SchubvanError, ValueError):
    """A permutation or other textual input could not be parsed."""


class NotHomogeneous(SchubvanError, ValueError):
    pass


class DimensionMismatch(SchubvanError, ValueError):
    """inv(u) + inv(v) != inv(w), or the permutations disagree on degree."""


class NotForwardSolvable(SchubvanError):
    """An equation could not be solved for a single undetermined unknown."""


class BadPrime(SchubvanError, ValueError):
    pass


class TooLarge(SchubvanError, ValueError):
    pass
