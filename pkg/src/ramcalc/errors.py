"""Exception hierarchy. Everything derives from RamificationError (a ValueError)."""


class RamificationError(ValueError):
    pass


class DomainError(RamificationError):
    pass


class NotHerbrandShaped(RamificationError):
    pass


class TameConflict(RamificationError):
    pass


class EmptyTower(RamificationError):
    pass


class InfiniteWildExponent(RamificationError):
    pass


class NoAdmissibleM(RamificationError):
    pass


class UncoveredCase(RamificationError):
    pass


class ConstraintViolation(RamificationError):
    pass


class MalformedProfile(RamificationError):
    pass


class NotIntegralFirstJump(RamificationError):
    pass


class TooFewJumps(RamificationError):
    pass


class InconsistentLayer(RamificationError):
    pass


class NotSingleJump(RamificationError):
    pass


class ParseError(RamificationError):
    pass


class ValidationError(RamificationError):
    pass


class IoError(OSError):
    pass
