class CliffordError(ValueError):
    pass


class SignatureMismatch(CliffordError):
    pass


class ScopeError(CliffordError):
    """A signature lies outside the range an operation is defined for."""


class RelationError(CliffordError):
    """A constructed representation violates the Clifford relations."""
