"""
Exceptions raised by borelwit.

Every error a caller can trigger with bad input or bounds derives from
`BorelwitError`. The CLI turns these into exit code 1 and prints the message
as-is, so messages should read well on their own.
"""


class BorelwitError(Exception):
    pass


class ParseError(BorelwitError):
    pass


class BoundExceeded(BorelwitError):
    def __init__(self, index: int, bound: int):
        super().__init__(
            f"bound exceeded: fewer than {index + 1} coder values are <= {bound}"
        )
        self.index = index
        self.bound = bound


class CapExceeded(BorelwitError):
    def __init__(self, horizon: int, cap: int):
        super().__init__(f"cap exceeded: horizon {horizon} > cap {cap}")
        self.horizon = horizon
        self.cap = cap


class TooLarge(BorelwitError):
    pass


class NotPlaced(BorelwitError):
    def __init__(self, word: str):
        super().__init__(f"not placed: '{word}'")
        self.word = word


class WordLengthError(BorelwitError):
    pass


class InconsistentPrefix(BorelwitError):
    pass


class NonUniqueWitness(BorelwitError):
    pass


class ChainBoundExceeded(BorelwitError):
    pass


class UnknownSuite(BorelwitError):
    def __init__(self, name: str, known: list):
        super().__init__(f"unknown suite '{name}', expected one of: {', '.join(known)}")
        self.name = name


class BoundTooLarge(BorelwitError):
    def __init__(self, suite: str, key: str, value: int, cap: int):
        super().__init__(f"bound too large for suite '{suite}': {key}={value} > {cap}")
        self.suite = suite
        self.key = key


class AlphabetMismatch(BorelwitError):
    pass


class WitnessCheckFailed(BorelwitError):
    pass


class UnknownBound(BorelwitError):
    def __init__(self, suite: str, key: str, known: list):
        super().__init__(
            f"unknown bound '{key}' for suite '{suite}', expected one of: {', '.join(known)}"
        )
        self.suite = suite
        self.key = key
