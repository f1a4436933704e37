class KParaKahlerError(Exception):
    """Base class for errors raised by this package."""


class FormatError(KParaKahlerError, ValueError):
    """Malformed JSON input."""


class NotADerivation(KParaKahlerError):
    def __init__(self, which: int, witness: tuple, residual: tuple):
        self.which = which
        self.witness = witness
        self.residual = residual
        pair = ",".join(str(i + 1) for i in witness)
        super().__init__(f"D{which} is not a derivation on basis pair ({pair})")


class DerivationsDoNotCommute(KParaKahlerError):
    pass


class NotCommutativeAssociative(KParaKahlerError):
    pass


class DegenerateStructure(KParaKahlerError):
    """The kernel splitting of h has the wrong dimensions."""


class SingularPairing(KParaKahlerError):
    """Some i_α : h^α → p* is not invertible."""


class MissingComplement(KParaKahlerError):
    pass


class HypothesisViolation(KParaKahlerError):
    """The antisymmetric parts of r violate the conditions needed to define ψ."""

    def __init__(self, message: str, witness: tuple = ()):
        self.witness = witness
        super().__init__(message)


class JacobiFailed(KParaKahlerError):
    def __init__(self, report):
        self.report = report
        super().__init__(report.summary())


class NormalFormMismatch(KParaKahlerError):
    """Internal consistency failure while building a classification witness."""


class ConstraintViolation(KParaKahlerError, ValueError):
    pass
