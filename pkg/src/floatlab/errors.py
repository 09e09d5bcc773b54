"""Exception types raised by floatlab."""


class FloatlabError(Exception):
    """Base class for all floatlab errors."""


class DegenerateInput(FloatlabError, ValueError):
    """Input points span a lower-dimensional set."""


class EmptyBody(FloatlabError, ValueError):
    """An operation needs a non-empty body."""


class EmptySection(FloatlabError, ValueError):
    """The cutting hyperplane misses the body."""


class InvalidDelta(FloatlabError, ValueError):
    """The volume fraction lies outside (0, 1/2]."""


class EmptyFloatingBody(FloatlabError, ValueError):
    """The convex floating body vanished for the requested fraction."""


class TooFewSamples(FloatlabError, ValueError):
    """Not enough samples for a finite-difference diagnostic."""


class AsymmetricBody(FloatlabError, ValueError):
    """The body is not centred at the origin."""


class InsideDisk(FloatlabError, ValueError):
    """A chord start point lies inside the tangency disk."""


class ParseError(FloatlabError, ValueError):
    """A body-spec file could not be interpreted."""

    def __init__(self, message, field=None, line=None):
        super().__init__(message)
        self.field = field
        self.line = line
