"""Exception hierarchy shared by every dlakit module."""


class DLAError(Exception):
    """Base class for dlakit errors."""


class DimensionMismatchError(DLAError, ValueError):
    pass


class NotHermitianError(DLAError, ValueError):
    pass


class DenseCapExceededError(DLAError, ValueError):
    pass


class DependentGeneratorsError(DLAError, ValueError):
    """Generators are not linearly independent over the reals."""


class InvalidGeneratorError(DLAError, ValueError):
    """A generator is not traceless or not anti-Hermitian."""


class CappedClosureError(DLAError):
    """An operation needs a completed closure but got a capped one."""


class SignAmbiguousError(DLAError, ValueError):
    pass


class SpectrumError(DLAError, ValueError):
    """Spectrum has too few distinct values, or duplicates where forbidden."""


class MalformedTreeError(DLAError, ValueError):
    pass


class SpecFormatError(DLAError, ValueError):
    """A spec or graph file does not follow the JSON schema."""
