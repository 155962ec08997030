"""Exception types raised by the harness."""


class HarnessError(Exception):
    """Base class for all docxeval errors."""


class IoFailure(HarnessError):
    """A file could not be read or written."""


class SchemaMismatch(HarnessError):
    """A file exists but does not have the expected shape."""


class MissingField(SchemaMismatch):
    """A record lacks a required field; the message names the offending cell."""


class InsufficientCategory(HarnessError):
    """A balanced sample was requested but a category has too few documents."""

    def __init__(self, category: str, available: int, requested: int):
        super().__init__(
            f"category {category!r} has only {available} documents, "
            f"need {requested} for a balanced sample"
        )
        self.category = category
        self.available = available
        self.requested = requested


class MissingBox(HarnessError):
    """Bbox-based table matching was requested but an extracted table has no box.

    Signals the caller should fall back to text-based matching.
    """
