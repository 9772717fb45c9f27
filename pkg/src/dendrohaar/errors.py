"""Exception hierarchy.

Every error raised by the library derives from :class:`DendroHaarError`.
Two intermediate classes split failures into bad input (:class:`InputError`)
and numeric or degeneracy failures (:class:`NumericError`); the command line
maps them to exit codes 2 and 3.
"""


class DendroHaarError(ValueError):
    pass


class InputError(DendroHaarError):
    pass


class NumericError(DendroHaarError):
    pass


# core
class NonRectangular(InputError):
    pass


class NonNumericCell(InputError):
    pass


class DuplicateLabel(InputError):
    pass


class ZeroRangeColumn(NumericError):
    def __init__(self, label):
        super().__init__(f"column {label!r} has zero range")
        self.label = label


# cluster
class TooFewRows(InputError):
    pass


# wavelet
class ShapeMismatch(InputError):
    pass


class LeafNotFound(InputError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class DepthOutOfRange(InputError):
    pass


# corranal
class ZeroMassRow(NumericError):
    pass


class DegenerateTable(NumericError):
    pass


# textcodec
class EmptyCorpus(InputError):
    pass


class UnknownTerm(InputError, KeyError):
    def __init__(self, term):
        super().__init__(f"term {term!r} not in rank table")
        self.term = term

    def __str__(self):
        return ValueError.__str__(self)


class TooLong(InputError):
    pass


class NonIntegerTransform(NumericError):
    pass


# infometrics
class NotAPermutation(InputError):
    pass


class LengthMismatch(InputError):
    pass


class NonRankInput(InputError):
    pass
