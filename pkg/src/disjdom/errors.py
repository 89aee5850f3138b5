"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`DisjDomError`
so the CLI can map it to exit code 2 in one place.
"""

from __future__ import annotations


class DisjDomError(Exception):
    """Base class for all package errors."""


class NotATree(DisjDomError, ValueError):
    pass


class BadIndex(DisjDomError, IndexError):
    pass


class BadVertexIndex(BadIndex):
    pass


class MalformedLine(DisjDomError, ValueError):
    pass


class OutOfRangeEntry(DisjDomError, ValueError):
    pass


class SizeCapExceeded(DisjDomError):
    pass


class CapExceeded(DisjDomError):
    pass


class OrderTooSmall(DisjDomError, ValueError):
    pass


class PreconditionViolated(DisjDomError):
    pass


class WrongStatus(DisjDomError, ValueError):
    pass


class MissingStatus(DisjDomError, ValueError):
    pass


class WrongFamily(DisjDomError, ValueError):
    pass


class NotALeaf(DisjDomError, ValueError):
    pass
