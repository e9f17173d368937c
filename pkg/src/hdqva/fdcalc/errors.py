class FDCalcError(Exception):
    pass


class UnexpandableFactor(FDCalcError):
    """A denominator form has no dominant variable in the requested region."""


class BadPoleStructure(FDCalcError):
    """A denominator factor other than z1, z2 or z1-z2 was met in delta extraction."""


class SingularAtDiagonal(FDCalcError):
    """A distribution coefficient has a pole at z1 = z2."""


class DenominatorOutOfFamily(FDCalcError):
    """Construction would produce a denominator outside the linear-form family."""


class PoleAtSubstitution(FDCalcError):
    """A substitution sends a denominator factor to zero."""


class NotInvertible(FDCalcError):
    pass
