"""Exception types shared across the library."""


class DomainError(ValueError):
    """A mathematically invalid input or an operation outside its domain.

    Raised for things like a non-prime characteristic, a disconnected cover
    whose conductor is requested, or a filtration that fails its invariants.
    The CLI maps this to exit code 1.
    """


class SchemaError(ValueError):
    """A malformed problem document (bad JSON shape, missing keys, ...).

    The CLI maps this to exit code 2.
    """


class PrecisionError(DomainError):
    """A series computation ran out of precision before a valuation was
    determined.  The tower oracle retries with doubled precision and only
    surfaces this once its cap is reached."""
