"""Exception hierarchy shared by all mvseq modules."""


class MvseqError(Exception):
    """Base class for every error raised by this package."""


class SignatureError(MvseqError):
    """A logic signature is malformed or a lookup against it failed."""

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


class UnknownConnective(SignatureError):
    pass


class ArityMismatch(SignatureError):
    pass


class UnboundAtom(MvseqError):
    pass


class ParseError(MvseqError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ReductionError(MvseqError):
    pass


class AlreadyLiteral(ReductionError):
    """reduce_step was asked to rewrite a node that no rule applies to."""


class ProofFormatError(MvseqError):
    pass


class SynthesisError(MvseqError):
    pass


class ModelError(MvseqError):
    pass
