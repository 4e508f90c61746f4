"""Shared exception types."""


class SocketLabError(Exception):
    """Base class for workbench errors."""


class CatalogError(SocketLabError):
    """Catalog file failed to parse or validate."""

    def __init__(self, message, issues=None):
        super().__init__(message)
        self.issues = list(issues or [])


class FileFormatError(SocketLabError):
    """A data file (replay stream, trial, pressure sequence) is malformed."""


class SessionStateError(SocketLabError):
    """An event is not legal in the current acquisition-session state."""
