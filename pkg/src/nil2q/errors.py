"""Error taxonomy shared by all modules.

Every rejection carries a message naming the offending data (index pair,
generated subgroup, ...) so failures are diagnosable from reports.
"""


class AlgebraError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidArgument(AlgebraError):
    """Malformed input: negative order, mismatched parents, bad shape."""


class InvalidHomomorphism(AlgebraError):
    """Matrix is not torsion-compatible with source/target orders."""


class UnsupportedEnumeration(AlgebraError):
    """An exhaustive stream was requested over an infinite set."""


class InvalidCocycle(AlgebraError):
    """Cocycle data violates torsion compatibility."""


class CommutatorMismatch(AlgebraError):
    """The antisymmetrized bilinear part does not generate B."""


class NotAGroup(AlgebraError):
    """A multiplication table fails the group axioms."""


class NotClassTwo(AlgebraError):
    """A group (or action) has nilpotence class greater than two."""


class NotAnAction(AlgebraError):
    """Semidirect product data does not define a group action."""


class NotAQMap(AlgebraError):
    """Generator data (or a function) fails the q-map conditions."""


class NotUniquely2Divisible(AlgebraError):
    """Even torsion where odd (uniquely 2-divisible) input is required."""


class InvalidBracket(AlgebraError):
    """Lie bracket data is not antisymmetric / torsion-compatible."""


class Unsupported(AlgebraError):
    """Operation outside the implemented scope (e.g. infinite search)."""


class InternalInvariant(AlgebraError):
    """A postcondition the implementation guarantees has been violated."""
