"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RingGroupsError(Exception):
    """Base class for library errors."""


class UnknownGenerator(RingGroupsError, KeyError):
    def __init__(self, name: str, context: str = ""):
        self.name = name
        self.context = context
        msg = f"unknown generator {name!r}"
        if context:
            msg += f" in {context}"
        super().__init__(msg)

    def __str__(self) -> str:
        return self.args[0]


class ParseError(RingGroupsError, ValueError):
    """Malformed input text.

    ``line`` and ``column`` are 1-based; ``expected`` lists the token kinds
    that would have been accepted at that position.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        detail = f"{line}:{column}: {message}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(detail)


class NotEliminable(RingGroupsError):
    pass


class NotPermConj(RingGroupsError):
    def __init__(self, index: int, reason: str):
        self.index = index
        super().__init__(f"generator {index}: {reason}")


class AlphabetMismatch(RingGroupsError, ValueError):
    pass


class OutOfSpace(RingGroupsError):
    def __init__(self, max_cosets: int):
        self.max_cosets = max_cosets
        super().__init__(f"coset enumeration out of space at {max_cosets}")


class IncompleteTable(RingGroupsError):
    pass


class NameClash(RingGroupsError, ValueError):
    pass


class MalformedAction(RingGroupsError, ValueError):
    pass


class DiscontinuousPath(RingGroupsError, ValueError):
    pass


class NotALoop(RingGroupsError, ValueError):
    pass


class NonIntegralWinding(RingGroupsError, ValueError):
    pass
