"""Exception types shared across the package.

Every domain error is a subclass of :class:`PretzelError`, so callers (in
particular the CLI) can separate expected rejections from genuine bugs.
"""


class PretzelError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(PretzelError):
    """Parameter text could not be parsed."""


class ZeroParameter(ParseError):
    """A twist parameter is 0.

    A zero parameter splits the diagram into a connected sum of torus
    knots, for which the cosmetic surgery conjecture is already known
    (Kirk-Livingston style connected-sum results); such inputs are
    rejected at construction rather than modelled.
    """


class Unsupported(PretzelError):
    """Two or more even parameters: not a knot or link this package models."""


class NotAKnot(PretzelError):
    """Operation requires a knot but the parameters give a 2-component link."""


class NotAllOdd(PretzelError):
    """The closed-form Jones formula only applies to all-odd parameters."""


class BadShape(PretzelError):
    """Parameter sequence violates a parity/shape precondition."""


class CapExceeded(PretzelError):
    """State-sum size exceeds the configured crossing cap."""


class OddExponent(PretzelError):
    """A half-integer power of t appeared where a knot polynomial was expected."""


class NotDivisible(PretzelError):
    """V''(1) not divisible by 6; upstream polynomial is not a knot's Jones."""


class NotAKnotPolynomial(PretzelError):
    """V(1) != 1, so the polynomial is not normalized on a knot."""


class Unnormalized(PretzelError):
    """Operation requires a normalized parameter sequence."""


class GenusTooSmall(PretzelError):
    """The slope bound only makes sense for genus at least 2."""
