"""Exception hierarchy shared by all modules."""


class PRShellsError(Exception):
    """Base class for every error raised by this package."""


class ZeroInverse(PRShellsError, ZeroDivisionError):
    pass


class NotPrime(PRShellsError, ValueError):
    pass


class NotDivisor(PRShellsError, ValueError):
    pass


class NotResidue(PRShellsError, ValueError):
    pass


class CoefficientOutsideBaseField(PRShellsError, ArithmeticError):
    pass


class CapExceeded(PRShellsError):
    def __init__(self, required, cap):
        self.required = required
        self.cap = cap
        super().__init__(f"enumeration needs {required} codewords, cap is {cap}")


class TooManySubsets(PRShellsError):
    pass


class NotSubgroup(PRShellsError, ValueError):
    pass


class CyclicActionFailed(PRShellsError):
    pass


class NonUniformBlocks(PRShellsError, ValueError):
    pass


class BlockSmallerThanT(PRShellsError, ValueError):
    pass


class NotIndependent(PRShellsError):
    pass


class DegreeZero(PRShellsError, ValueError):
    pass


class GroupNotAutomorphism(PRShellsError):
    pass


class FormatError(PRShellsError, ValueError):
    pass
