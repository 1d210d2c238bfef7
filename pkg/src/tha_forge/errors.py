class ThaForgeError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""


class ConfigurationError(ThaForgeError, ValueError):
    """Unknown Cartan type, invalid rank, malformed weight or spec."""


class InvalidNormalisationError(ConfigurationError):
    """kappa(e_k, f_k) ratios incompatible with the symmetriser."""


class SingularBError(ThaForgeError, ValueError):
    """The extended matrix B is not invertible."""


class UnsupportedError(ThaForgeError):
    """Input outside what is constructed (e.g. non-finite type)."""


class DomainError(ThaForgeError, ValueError):
    """A product or pairing outside the degrees where it is defined."""


class PreconditionError(ThaForgeError):
    """A check was asked for on input that does not satisfy its hypotheses.

    ``witness`` carries whatever explains the failure (e.g. the nonzero
    entries of the alpha_0-scan).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotPeripheralError(ThaForgeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
