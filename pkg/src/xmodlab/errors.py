"""Exception hierarchy shared by all xmodlab modules."""


class XModLabError(Exception):
    """Base class for every error raised by xmodlab."""


class EnumerationCapExceeded(XModLabError):
    pass


class CapExceeded(XModLabError):
    pass


class ElementNotInAmbient(XModLabError):
    pass


class AmbientMismatch(XModLabError):
    pass


class NotAHomomorphism(XModLabError):
    pass


class NotNormal(XModLabError):
    pass


class NotAbelian(XModLabError):
    pass


class NotNormalized(XModLabError):
    pass


class WordBudgetExceeded(XModLabError):
    pass


class CosetCapExceeded(XModLabError):
    pass


class PrecrossedViolation(XModLabError):
    """Carries the offending pair ``(l, m)``."""

    def __init__(self, l, m, message=None):
        self.l = l
        self.m = m
        super().__init__(message or f"precrossed condition fails at l={l}, m={m}")


class PeifferViolation(XModLabError):
    """Carries the offending pair ``(m, m2)``."""

    def __init__(self, m, m2, message=None):
        self.m = m
        self.m2 = m2
        super().__init__(message or f"Peiffer condition fails at m={m}, m'={m2}")


class NotSurjective(XModLabError):
    pass


class NotEquivariant(XModLabError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class BoundaryMismatch(XModLabError):
    pass


class NotCentral(XModLabError):
    pass


class NotPerfect(XModLabError):
    pass


class IsPerfect(XModLabError):
    pass


class LiftFailure(XModLabError):
    pass


class NotSplitExact(XModLabError):
    pass


class ParseError(XModLabError):
    def __init__(self, file, line, message):
        self.file = str(file)
        self.line = line
        super().__init__(f"{file}:{line}: {message}")


class ValidationError(XModLabError):
    def __init__(self, entry, cause):
        self.entry = entry
        self.cause = cause
        super().__init__(f"{entry}: {cause}")


class UnknownSuite(XModLabError):
    pass
