"""Exception hierarchy shared by all modules."""


class HamsynthError(Exception):
    """Base class for every error raised by the package."""


class DimensionError(HamsynthError, ValueError):
    """Operand shapes are incompatible."""


class HermiticityError(HamsynthError, ValueError):
    """A matrix expected to be Hermitian is not."""


class UnitarityError(HamsynthError, ValueError):
    """A matrix expected to be unitary is not."""


class PauliParseError(HamsynthError, ValueError):
    """Invalid Pauli string; ``position`` is 1-based."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class DeviceConfigError(HamsynthError, ValueError):
    """Malformed device configuration text."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class DeviceError(HamsynthError, ValueError):
    """Unknown device, bad parameters or invalid switch setting."""


class ControllabilityError(HamsynthError, ValueError):
    """The Hamiltonians do not generate the required algebra."""


class RegimeError(HamsynthError, ValueError):
    """Analytic solver requested outside its validity regime."""


class AnalyticDomainError(HamsynthError, ValueError):
    """Closed-form solution does not exist or failed verification."""


class GateError(HamsynthError, ValueError):
    """Unknown gate or wrong parameter count."""
