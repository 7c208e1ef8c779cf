"""Exception hierarchy for the hamcay package."""


class HamcayError(Exception):
    """Base class for all errors raised by this package."""


class TableError(HamcayError):
    """A multiplication table failed structural validation."""


class NotLatinSquare(TableError):
    pass


class NotAssociative(TableError):
    pass


class NoIdentity(TableError):
    pass


class NoInverse(TableError):
    pass


class OrderTooLarge(TableError):
    """Group order exceeds the hard cap."""


class InvalidAction(HamcayError):
    """A semidirect-product action is not a homomorphism into Aut(K)."""


class NotNormal(HamcayError):
    """A quotient or lift was requested over a non-normal subgroup."""


class NotADivisor(HamcayError):
    pass


class NotIsomorphic(HamcayError):
    """Presentation matching exhausted the search space without a match."""


class BudgetExceeded(HamcayError):
    """A bounded search ran out of nodes or time before finishing."""


class HypothesisFailure(HamcayError):
    """A lemma was invoked on inputs that do not satisfy its hypotheses.

    Carries the lemma name, the violated clause, and witness elements so the
    failure can be re-checked independently."""

    def __init__(self, message, lemma=None, clause=None, witness=None):
        super().__init__(message)
        self.lemma = lemma
        self.clause = clause
        self.witness = witness


class RotationImpossible(HamcayError):
    """A cycle cannot be rotated/reflected to end with the required symbol."""


class NotHamiltonian(HamcayError):
    """A walk claimed to be a Hamiltonian cycle fails verification."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Unsupported(HamcayError):
    """The group's order form is outside the implemented construction map."""


class TheoremViolationSuspected(HamcayError):
    """An exhaustive search contradicted a guarantee; implementation bug."""


class InternalInconsistency(HamcayError):
    """A case analysis reached a state its preconditions should exclude."""


class StoreCorrupt(HamcayError):
    """A stored certificate failed re-verification on load."""


class ParseError(HamcayError):
    """Malformed external file or CLI argument."""
