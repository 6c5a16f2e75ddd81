"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
1 for bad user input, 2 for internal consistency failures, 3 for a
corrupted cache file.
"""


class HGError(Exception):
    exit_code = 2


class BadRange(HGError, ValueError):
    exit_code = 1


class DivisionInexact(HGError, ArithmeticError):
    pass


class BoundMismatch(HGError, ValueError):
    pass


class NotInF1(HGError, ValueError):
    """Second argument of a plethysm has a nonzero constant term."""


class NoConvergence(HGError, RuntimeError):
    pass


class IntegralityFailure(HGError, ArithmeticError):
    pass


class InternalInconsistency(HGError, RuntimeError):
    pass


class CacheCorrupt(HGError, OSError):
    exit_code = 3
