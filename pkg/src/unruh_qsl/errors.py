"""Exception hierarchy shared by every module of the package."""


class UnruhQslError(Exception):
    """Base class for all errors raised by :mod:`unruh_qsl`."""


class DomainError(UnruhQslError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class DimensionError(UnruhQslError, ValueError):
    """Operator shapes are incompatible with the qubit x Fock layout."""


class AccuracyError(UnruhQslError, ArithmeticError):
    """A series, expansion or quadrature did not reach its tolerance."""


class CutoffTooLargeError(UnruhQslError):
    """The Fock cutoff needed for the requested trace tolerance exceeds the cap."""


class ConstructionError(UnruhQslError):
    """A constructed density matrix violates Hermiticity, positivity or trace bounds."""


class ZeroEvolutionError(UnruhQslError, ZeroDivisionError):
    """The channel does not move the state, so the speed-limit ratio is 0/0."""


class DivergenceError(UnruhQslError, ArithmeticError):
    """The requested quantity diverges at this parameter value."""


class InsufficientGridError(UnruhQslError, ValueError):
    """Too few sweep points to classify a curve."""


class BracketError(UnruhQslError):
    """Bisection bounds do not carry the expected regime labels."""
