"""
Exceptions raised by :mod:`neron_graphs`.

Every error derives from :class:`NeronGraphsError`. Errors that signal a bad
argument also derive from the matching builtin (:class:`ValueError`,
:class:`KeyError`) so callers may catch either.
"""

from typing import Optional


class NeronGraphsError(Exception):
    """Base class of all package errors."""


class AlphabetError(NeronGraphsError, ValueError):
    """Malformed alphabet, or values over different alphabets combined."""


class IdentityElementError(NeronGraphsError, ValueError):
    """The identity element was passed where a non-unit is required."""


class UndefinedComplexityError(IdentityElementError):
    """Arithmetic complexity is only defined away from the identity."""


class UndefinedTypeError(IdentityElementError):
    """The identity has no types."""


class UndefinedRootError(IdentityElementError):
    """The identity has no primitive root."""


class CycleBudgetExceeded(NeronGraphsError):
    """
    Raised when a graph has more simple cycles than the allowed budget.

    :param cap: The budget that was exceeded.
    :type cap: :class:`int`
    """

    def __init__(self, cap: int) -> None:
        super().__init__(f"more than {cap} cycles; raise the cycle cap to continue")
        self.cap = cap


class MissingEdgeError(NeronGraphsError, KeyError):
    """An edge id was not found in the graph."""

    def __str__(self) -> str:
        # KeyError quotes its argument, keep the message readable
        return str(self.args[0]) if self.args else ""


class InvalidTypeError(NeronGraphsError, ValueError):
    """A basic refinement type is not a proper divisor of the edge label."""


class CompositionError(NeronGraphsError, ValueError):
    """Two refinement witnesses cannot be composed."""


class TransportDirectionError(NeronGraphsError, ValueError):
    """A refinement was transported from a point that is not minimal."""


class FamilyError(NeronGraphsError, ValueError):
    """A graph family is inconsistent in a way that blocks an operation."""


class SpecError(NeronGraphsError, ValueError):
    """A random graph specification cannot be realised."""


class InputError(NeronGraphsError, ValueError):
    """
    Malformed input document.

    :param message: What is wrong.
    :type message: :class:`str`
    :param source: File name or other origin of the document.
    :type source: :class:`str` or ``None``
    :param location: JSON path (``$.edges[0].label``) or ``line:column``.
    :type location: :class:`str` or ``None``
    """

    def __init__(
        self,
        message: str,
        source: Optional[str] = None,
        location: Optional[str] = None,
    ) -> None:
        self.message = message
        self.source = source
        self.location = location

        prefix = ":".join(p for p in (source, location) if p)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class InvalidOrientationError(NeronGraphsError, ValueError):
    """The orientation vertex of a basic refinement is not an endpoint of its edge."""
