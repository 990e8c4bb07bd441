"""Exception hierarchy. Every error raised on purpose by zlab derives from ZlabError."""


class ZlabError(Exception):
    pass


class InputError(ZlabError):
    """Bad user input: parse failures, non-essential matrices, bad options."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotEssential(InputError):
    pass


class UnsupportedCombination(InputError):
    pass


class GroundSetTooLarge(ZlabError):
    pass


class ContractLoop(ZlabError):
    pass


class LoopOrColoop(ZlabError):
    pass


class GenericityFailure(ZlabError):
    pass


class InternalMismatch(ZlabError):
    """Two independent computations of the same quantity disagreed."""


class CapExceeded(ZlabError):
    pass


class VarCountMismatch(ZlabError):
    pass


class UnsupportedK(ZlabError):
    pass


class PositiveKUnsupported(ZlabError):
    pass


class NotAPolymatroid(ZlabError):
    pass


class DenominatorDivisibleByPrime(ZlabError):
    pass
