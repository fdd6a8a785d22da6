"""Exception hierarchy.

Every error raised by the library derives from :class:`DirclustError`.
Input-validation problems derive from :class:`ValidationError` (also a
``ValueError``) so that callers who only care about "bad data" can catch a
single class.
"""


class DirclustError(Exception):
    """Base class for all library errors."""


class ValidationError(DirclustError, ValueError):
    """An input violates a structural invariant."""


class DimensionMismatch(ValidationError):
    pass


class DuplicateLabel(ValidationError):
    pass


class NonZeroDiagonal(ValidationError):
    def __init__(self, i, value):
        super().__init__(f"diagonal entry {i} is {value}, expected 0")
        self.i = i
        self.value = value


class NegativeEntry(ValidationError):
    def __init__(self, i, j, value):
        super().__init__(f"entry ({i}, {j}) is negative: {value}")
        self.i, self.j, self.value = i, j, value


class ZeroOffDiagonal(ValidationError):
    def __init__(self, i, j):
        super().__init__(f"off-diagonal entry ({i}, {j}) is zero")
        self.i, self.j = i, j


class NotSymmetric(ValidationError):
    def __init__(self, i=None, j=None, msg=None):
        if msg is None:
            msg = f"matrix is not symmetric at ({i}, {j})"
        super().__init__(msg)
        self.i, self.j = i, j


class BadDiagonal(ValidationError):
    def __init__(self, i, value):
        super().__init__(f"diagonal entry {i} is {value}, expected 0")
        self.i, self.value = i, value


class StrongTriangleViolated(ValidationError):
    def __init__(self, i, j, k, values):
        uik, uij, ujk = values
        super().__init__(
            f"u({i},{k})={uik} > max(u({i},{j})={uij}, u({j},{k})={ujk})"
        )
        self.i, self.j, self.k = i, j, k
        self.values = values


class InvalidPartition(ValidationError):
    pass


class BadPermutation(ValidationError):
    pass


class BadParams(ValidationError):
    pass


class BadAlpha(ValidationError):
    pass


class TooFewNodes(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class ChainTooShort(ValidationError):
    pass


class PreconditionViolated(ValidationError):
    pass


class NotDissimilarityReducing(ValidationError):
    def __init__(self, report):
        super().__init__(f"map is not dissimilarity reducing: {report.witness}")
        self.report = report


class InfiniteValue(DirclustError):
    """Some node pairs never merge; ``dendrogram`` holds the partial forest."""

    def __init__(self, dendrogram):
        n_roots = len(dendrogram.roots())
        super().__init__(f"ultrametric has infinite values; forest of {n_roots} trees")
        self.dendrogram = dendrogram
