"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Score vector, schedule, or outcome table dimensions disagree."""


class DisconnectedGraphError(ValueError):
    """The undirected comparison graph is not connected."""


class SupportMismatchError(ValueError):
    """Two edge-weighted matrices do not share the same edge support."""


class MleExistenceError(RuntimeError):
    """The likelihood has no maximizer (Ford's condition fails)."""


class NumericalError(RuntimeError):
    """An eigensolver or linear solve failed to produce a usable result."""


class GenerationError(RuntimeError):
    """A random graph generator exhausted its retry budget."""


class CsvFormatError(ValueError):
    """A CSV file violates the expected schema; message carries the line number."""


class ConfigError(ValueError):
    """An experiment configuration is structurally invalid."""
