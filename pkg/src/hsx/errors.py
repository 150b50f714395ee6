"""Exception hierarchy shared by every hsx module."""


class HsxError(ValueError):
    """Base class: ill-posed input or a failed verification."""


class InvalidType(HsxError):
    pass


class IndexOutOfRange(HsxError):
    pass


class BasisMismatch(HsxError):
    pass


class InvalidWord(HsxError):
    pass


class EmptyParabolic(HsxError):
    pass


class DegreeOutOfRange(HsxError):
    pass


class NotASubvariety(HsxError):
    pass


class TopDegree(HsxError):
    pass


class NotPicardRankOne(HsxError):
    pass


# the adjoint builder reports the same condition under its own name
PicardRankNotOne = NotPicardRankOne


class DegreeMismatch(HsxError):
    pass


class ParityError(HsxError):
    pass


class NegativeCoefficient(HsxError):
    pass


class CostGuardExceeded(HsxError):
    pass


class PointCollision(HsxError):
    pass


class IrregularPoint(HsxError):
    pass


class CrossCheckFailed(HsxError):
    pass


class CumbersomeViolation(HsxError):
    pass


class NonpositiveX(HsxError):
    pass


class IdentityFailed(HsxError):
    def __init__(self, message, difference=None):
        super().__init__(message)
        self.difference = difference


class PosdefFailed(HsxError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FormulaMismatch(HsxError):
    pass
