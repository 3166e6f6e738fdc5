"""Exception hierarchy shared by all fqgeom modules."""


class FqGeomError(Exception):
    pass


class NotPrime(FqGeomError, ValueError):
    pass


class ReducibleModulus(FqGeomError, ValueError):
    pass


class DegreeMismatch(FqGeomError, ValueError):
    pass


class ArityMismatch(FqGeomError, ValueError):
    pass


class DependentConstraints(FqGeomError, ValueError):
    pass


class DivisorZero(FqGeomError, ZeroDivisionError):
    pass


class DuplicatePoint(FqGeomError, ValueError):
    pass


class NonSplitting(FqGeomError, ValueError):
    pass


class NotMonic(FqGeomError, ValueError):
    pass


class RankTooLarge(FqGeomError, ValueError):
    pass


class RankOutOfRange(FqGeomError, ValueError):
    pass


class NoWeightOnePoint(FqGeomError, ValueError):
    pass


class AmbientTooLarge(FqGeomError, ValueError):
    pass


class UnsupportedQ(FqGeomError, ValueError):
    pass


class PointNotInSubspace(FqGeomError, ValueError):
    pass


class CapExceeded(FqGeomError, RuntimeError):
    pass


class ParseError(FqGeomError, ValueError):
    pass
