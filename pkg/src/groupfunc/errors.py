"""Exception hierarchy. exit_code matches the CLI contract (1/2/3)."""


class GroupFuncError(Exception):
    exit_code = 1


class PreconditionError(GroupFuncError):
    """Caller violated a documented precondition."""

    exit_code = 1


class RangeError(PreconditionError):
    """Element index outside 0..order-1."""


class TableValidationError(PreconditionError):
    """Imported Cayley table fails a group axiom; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SpecParseError(PreconditionError):
    """Group spec expression could not be parsed; carries the position."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ShapeError(PreconditionError):
    """Mismatched domains/codomains between functions or groups."""


class NormalityError(PreconditionError):
    """Subgroup required to be normal is not."""


class SolubilityError(PreconditionError):
    """Derived series does not reach the trivial subgroup."""


class CoprimalityError(PreconditionError):
    """gcd condition required for a modular inverse fails."""


class AbelianPreconditionError(PreconditionError):
    """Subgroup required to be abelian is not."""


class ContainmentError(PreconditionError):
    """Required subgroup/value containment fails."""


class CertificationError(PreconditionError):
    """Function claimed to be a homomorphism is not; carries a witness pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCotwistedError(PreconditionError):
    """Two functions do not agree modulo the given abelian subgroup."""


class InvariantViolationError(GroupFuncError):
    """An identity the library guarantees failed; indicates a bug."""

    exit_code = 2


class SizeLimitError(GroupFuncError):
    """Requested computation exceeds a configured cap."""

    exit_code = 3
