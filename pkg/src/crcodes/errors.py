"""Exception hierarchy shared by all modules."""


class CRCodesError(Exception):
    """Base class for every error raised by this package."""


class ParameterOutOfRange(CRCodesError, ValueError):
    pass


class FileFormatError(CRCodesError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class EigenFailure(CRCodesError):
    """Fewer distinct eigenvalues were isolated than the matrix order."""


class NotAnEigenvalue(CRCodesError):
    pass


class TrivialCode(CRCodesError):
    pass


class LloydViolation(CRCodesError):
    """An eigenvalue of the quotient matrix is not an eigenvalue of the graph."""


class GraphNotQPoly(CRCodesError):
    pass


class LemmaViolation(CRCodesError):
    """A theorem-guaranteed structural property failed; indicates an upstream bug."""


class DegenerateEigenvector(CRCodesError):
    pass


class NonTermination(CRCodesError):
    pass


class InconsistentData(CRCodesError):
    pass


class NotCompletelyRegular(CRCodesError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"code is not completely regular: {witness}")


class TheoremViolation(LemmaViolation):
    """Two computations that a theorem says must agree did not."""
