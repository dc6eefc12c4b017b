"""Shared exception hierarchy.

Every error carries a stable machine-readable ``code`` so the command line
interface can emit one-line diagnostics that scripts can match on.
"""


class LocmultError(Exception):
    """Base class for all library errors."""

    code = "error"

    def __init__(self, message, *, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code
