"""Exception types shared across the package."""

from __future__ import annotations


class FusionError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPermutation(FusionError):
    """A permutation input is not a bijection on the stated points."""


class ClosureBudgetExceeded(FusionError):
    """A closure computation exceeded its configured size budget."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class BudgetExceeded(ClosureBudgetExceeded):
    """A bounded search exceeded its budget; carries any partial result."""


class NotAHomomorphism(FusionError):
    """A map claimed to be a homomorphism fails the defining identity."""


class NotIsomorphism(FusionError):
    """A map claimed to be an isomorphism is not bijective."""


class ChainNotInvariant(FusionError):
    """A subgroup chain is not normalized by the acting group."""


class HNotConjugacyClosed(FusionError):
    """An object collection is not closed under conjugacy in the system."""


class HNotClosedUnderOvergroups(FusionError):
    """An object collection is not closed under overgroups."""


class MalformedH(FusionError):
    """An object collection violates a structural precondition."""


class NotSaturated(FusionError):
    """An operation requires a saturated fusion system."""


class NotSaturatedInput(NotSaturated):
    """An input subsystem that must be saturated is not."""


class NotSubsystem(FusionError):
    """A claimed subsystem is not contained in the ambient system."""


class NotCentral(FusionError):
    """A subgroup required to be central in the system is not."""


class PremiseFailed(FusionError):
    """A lemma-style check was invoked with its premise violated."""


class IncompleteEnumeration(FusionError):
    """A verdict would depend on an enumeration that hit its budget."""


class HypothesisFailed(FusionError):
    """A numbered hypothesis of a verified setup fails.

    ``part`` names the failing clause ("i", "ii", "iii", "iv") and
    ``witness`` carries a counterexample when one exists.
    """

    def __init__(self, part, message, witness=None):
        super().__init__(f"hypothesis ({part}) failed: {message}")
        self.part = part
        self.witness = witness


class NotCommuting(FusionError):
    """Subsystems fail the commuting criterion."""


class NotInH(FusionError):
    """A morphism lies outside the object collection of a labeling."""


class NotFullyNormalized(FusionError):
    """A subgroup required to be fully normalized is not."""


class Constrained(FusionError):
    """The fusion system is constrained, so it has no components."""
