"""
Exception classes for qlattice.

Centralized location for all custom exceptions to avoid circular imports.
"""


class QLatticeError(Exception):
    """Base exception for all qlattice errors."""

    pass


class ValidationError(QLatticeError):
    """Base exception for validation-related errors."""

    pass


class ConfigurationError(QLatticeError):
    """Base exception for configuration-related errors."""

    pass


# Field arithmetic


class FieldError(QLatticeError):
    """Base exception for finite field construction and arithmetic."""

    pass


class NotPrimePower(FieldError):
    """Field order is not a prime power in the supported range."""

    pass


class EntryOutOfRange(FieldError):
    """A matrix entry is not a valid element code of the field."""

    pass


# Subspaces and families


class SubspaceError(QLatticeError):
    """Base exception for lattice operations."""

    pass


class AmbientMismatch(SubspaceError):
    """Operands live in different ambient spaces (field or n differ)."""

    pass


class DimensionOrderViolation(SubspaceError):
    """A shadow was requested above the dimension of some member."""

    pass


class MixedDimensions(SubspaceError):
    """Operation needs a uniform family but members differ in dimension."""

    pass


class TopLayer(SubspaceError):
    """Shade of a family made of full spaces."""

    pass


class EmptyFamily(SubspaceError):
    """Statistic undefined on the empty family."""

    pass


class BudgetExceeded(QLatticeError):
    """Enumeration or search would exceed a desk-scale budget guard."""

    pass


class FamilyFormatError(ValidationError):
    """Malformed Family text document."""

    pass


class CertificateFormatError(ValidationError):
    """Malformed search certificate document."""

    pass


# Bounds


class BoundError(QLatticeError):
    """Base exception for Gaussian binomial and bound evaluation."""

    pass


class NegativeArgument(BoundError):
    """Negative argument to an exact Gaussian binomial."""

    pass


class SizeZero(BoundError):
    """Real-m inversion requested for an empty family."""

    pass


class DimensionOverflow(BoundError):
    """Dimensions do not fit into the ambient space."""

    pass


class BadParameters(BoundError):
    """Parameters outside the range where a formula is defined."""

    pass


class HypothesisViolated(BoundError):
    """Parameters violate the hypotheses a statement needs."""

    pass


class FormulaError(BoundError):
    """Formula string could not be parsed or evaluated."""

    pass


# Constructions and search


class FamilyError(QLatticeError):
    """Base exception for family constructions."""

    pass


class BadAnchor(FamilyError):
    """Anchor subspace has the wrong dimension or position."""

    pass


class SearchError(QLatticeError):
    """Base exception for extremal searches."""

    pass


class ParametersOutOfRange(SearchError):
    """Search parameters outside the supported range."""

    pass


class SoundnessError(SearchError):
    """A search witness failed the independent predicate re-check."""

    pass
