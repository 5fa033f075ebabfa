"""Exception types shared across the workbench."""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for every error raised by this package."""


class NonPrime(WorkbenchError):
    """A parameter that must be prime is not."""


class FieldTooLarge(WorkbenchError):
    """Requested finite field exceeds the supported size."""


class NoModulusAvailable(WorkbenchError):
    """No irreducible modulus was found for the requested degree."""


class SpecMismatch(WorkbenchError):
    """Operands belong to different fields."""


class DivisionByZero(WorkbenchError):
    """Inversion or division of the zero scalar."""


class NotCharTwoFinite(WorkbenchError):
    """Operation requires a finite field of characteristic 2."""


class InfiniteFieldUnsupported(WorkbenchError):
    """Operation requires enumerating the field, which must be finite."""


class OrderCapExceeded(WorkbenchError):
    """A group, scan or search would exceed its configured size cap."""

    def __init__(self, message: str, cap: int | None = None):
        super().__init__(message)
        self.cap = cap


class NonClosedArithmetic(WorkbenchError):
    """Generator arithmetic did not behave like a group operation."""


class DivisibilityViolated(WorkbenchError):
    """Parameters fail a required divisibility relation."""


class ActionNotAutomorphism(WorkbenchError):
    """A semidirect action value does not preserve the group table."""


class ActionNotHomomorphism(WorkbenchError):
    """A semidirect action is not a homomorphism into the automorphisms."""


class NoMatrixLabels(WorkbenchError):
    """Group was not built from matrices, so matrix-level maps are undefined."""


class NotCharTwo(WorkbenchError):
    """Operation requires a matrix group over a characteristic-2 field."""


class NotNormal(WorkbenchError):
    """Subgroup argument must be normal."""


class PreconditionFailed(WorkbenchError):
    """Explicit mathematical precondition does not hold for the arguments."""


class NotCT(WorkbenchError):
    """Group is not commutative transitive."""


class IsCSA(WorkbenchError):
    """Group satisfies conjugate separation, so no violation exists."""


class NotSolvableCT(WorkbenchError):
    """Group is not both solvable and commutative transitive."""


class ParseError(WorkbenchError):
    """Sentence text does not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundVariable(ParseError):
    """A sentence uses a variable its prefix does not bind."""

    def __init__(self, name: str, position: int):
        super().__init__(f"unbound variable {name!r}", position)
        self.name = name


class UnknownBuiltin(WorkbenchError):
    """Requested builtin sentence name is not in the catalogue."""


class DepthCapExceeded(WorkbenchError):
    """Quantifier depth exceeds the cap for groups of this order."""


class RecipeError(WorkbenchError):
    """Group recipe string does not match the recipe grammar."""


class ConfigError(WorkbenchError):
    """Configuration file is malformed or inconsistent."""
