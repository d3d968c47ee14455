"""Exception types raised across the package."""


class DiscrimlabError(Exception):
    """Base class for all package errors."""


class DimensionError(DiscrimlabError, ValueError):
    """Operands have incompatible shapes."""


class PreconditionError(DiscrimlabError, ValueError):
    """An operation was called outside its domain."""


class ZeroNormal(DiscrimlabError, ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"normal {index} is the zero vector")


class NotGeneric(DiscrimlabError, ValueError):
    """Some k normals of a would-be central generic arrangement are dependent."""

    def __init__(self, subset):
        self.subset = tuple(subset)
        super().__init__(f"normals {list(self.subset)} are linearly dependent")


class MissingVertex(DiscrimlabError, ValueError):
    def __init__(self, member):
        self.member = tuple(member)
        super().__init__(f"hyperplanes {list(self.member)} have no common point")


class OnlyCentral(DiscrimlabError, ValueError):
    """Every translate in the requested intersection is central."""
