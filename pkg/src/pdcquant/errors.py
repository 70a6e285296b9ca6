"""Exception types shared across the package."""


class InvalidConfigError(ValueError):
    """Raised for malformed seed/process parameters (negative intensity,
    mixed seed families, non-finite values, bad scan axes)."""


class UndefinedQuantifierError(ValueError):
    """Raised when a quantifier denominator vanishes: both output means are
    zero, which happens only for vacuum seeds at zero gain."""


class QuantifierNotApplicableError(ValueError):
    """Raised when a quantifier is requested outside its domain of validity
    (the entanglement quantifier is defined for thermal/vacuum seeds only)."""


class TruncationInadequateError(RuntimeError):
    """Raised when a truncated Fock-space computation leaves too much
    population near the cutoff for its result to be trusted."""

    def __init__(self, message, tail_mass=None, dim=None):
        super().__init__(message)
        self.tail_mass = tail_mass
        self.dim = dim
