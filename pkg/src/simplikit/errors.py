"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: usage problems exit 1, data/parse
problems exit 2, missing resources exit 3.
"""


class SimplikitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(SimplikitError):
    """A file violated its format. Carries the path and 1-based line number."""

    def __init__(self, path, line_no, message):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{self.path}:{line_no}: {message}")


class DataError(SimplikitError):
    """Inputs parsed but are mutually inconsistent (misaligned, empty, ...)."""


class ResourceMissingError(SimplikitError):
    """A lexical resource required by the requested operation is not loaded."""
