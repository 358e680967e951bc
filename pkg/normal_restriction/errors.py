class GroupError(Exception):
    """Base class for every error raised by normal_restriction"""


class CapExceeded(GroupError):
    """Some computation would grow beyond a configured cap"""


class DegreeMismatch(GroupError):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class IndexCapExceeded(CapExceeded):
    pass


class DegreeCapExceeded(CapExceeded):
    pass


class LatticeCapExceeded(CapExceeded):
    pass


class ScanCapExceeded(CapExceeded):
    pass


class ForeignElement(GroupError):
    pass


class ForeignSubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotPrime(GroupError):
    pass


class NotPGroup(GroupError):
    pass


class NotNormalInH(GroupError):
    pass


class ChainViolation(GroupError):
    pass


class UnknownTheoremId(GroupError):
    pass


class MissingSubject(GroupError):
    pass


class UnknownSuite(GroupError):
    pass


class UnsupportedSpec(GroupError):
    pass


class CycleParseError(GroupError):
    pass


class ParseError(GroupError):
    """Malformed corpus record; `line` is the 1-based line in the corpus file"""

    def __init__(self, message: str, line: int = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
