"""Exception types shared across the package."""


class EfracError(Exception):
    """Base class for every error raised by this package."""


class StructureError(EfracError):
    """Malformed or inconsistent input: bad nesting, length mismatch, divisibility violation."""


class InvalidCountError(StructureError):
    """A subset-sum count that is impossible for the claimed set size."""


class ResourceBudgetError(EfracError):
    """A computation would exceed the configured memory or search budget."""


class CacheError(StructureError):
    """A cache file is corrupt or does not match the requested computation."""


class ConfigError(StructureError):
    """Invalid run configuration value or file."""
