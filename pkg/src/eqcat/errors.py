"""Exception hierarchy shared by every engine in the package."""


class EqcatError(Exception):
    """Base class for all errors raised by eqcat."""


class InputError(EqcatError, ValueError):
    """Malformed input data (documents, permutations, certificates)."""

    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class InvalidPermutation(InputError):
    pass


class OrderCapExceeded(EqcatError):
    pass


class NotRegular(EqcatError):
    pass


class NotMonotone(EqcatError):
    pass


class NoPrincipal(EqcatError):
    pass


class NotFree(EqcatError):
    pass


class LiftObstructed(EqcatError):
    pass


class SearchBudgetExceeded(EqcatError):
    pass


class NotMember(EqcatError):
    pass


# -- certificate verification -------------------------------------------------


class CertificateError(EqcatError):
    """A cover certificate failed one of its checks.

    ``piece`` is the index of the offending piece (or None for global
    failures such as the covering condition).
    """

    def __init__(self, message, piece=None, **detail):
        self.piece = piece
        self.detail = detail
        if piece is not None:
            message = f"piece {piece}: {message}"
        super().__init__(message)

    @property
    def name(self):
        return type(self).__name__


class NotCovering(CertificateError):
    pass


class NotSubcomplex(CertificateError):
    pass


class NotInvariant(CertificateError):
    pass


class NotFull(CertificateError):
    pass


class BadInitial(CertificateError):
    pass


class NotEquivariant(CertificateError):
    pass


class NotContiguous(CertificateError):
    pass


class BadTerminal(CertificateError):
    pass


# -- PL model verification ----------------------------------------------------


class VerificationFailure(EqcatError):
    """A Weyl-model verifier found a counterexample."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class Uncovered(VerificationFailure):
    pass


class Collision(VerificationFailure):
    pass


class EquivarianceFailure(VerificationFailure):
    pass


class NotStarShaped(VerificationFailure):
    pass
