"""Exception hierarchy shared by all ramify modules."""


class RamifyError(Exception):
    """Base class for every error raised by the library."""


class ValidationError(RamifyError, ValueError):
    """Malformed input: bad parameters, wrong shapes, inconsistent data."""


class PrecisionExhausted(RamifyError):
    """A quantity that must be certified is indistinguishable from zero at the working precision."""


class DivisionByZeroAtPrecision(PrecisionExhausted, ZeroDivisionError):
    pass


class NonEisenstein(ValidationError):
    pass


class NotUnramified(ValidationError):
    pass


class NotSeparable(ValidationError):
    pass


class SingularGram(PrecisionExhausted):
    pass


class Undecidable(RamifyError):
    """A symbolic cut cannot be put in canonical form from the data supplied."""


class InconsistentInfimum(ValidationError):
    pass


class UnsupportedExtension(ValidationError):
    """The extension cannot be presented as a single Eisenstein or unramified step."""
