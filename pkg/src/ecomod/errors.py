"""Exception types shared across the package."""


class EcomodError(Exception):
    """Base class for all package-specific errors."""


class DecodeError(EcomodError):
    """A model document could not be decoded.

    ``path`` is a JSON-pointer-ish location ("components[2].kind") when the
    document parsed but violated the schema; ``offset`` is the byte offset
    when the document was not valid JSON at all.
    """

    def __init__(self, message: str, *, path: str | None = None, offset: int | None = None):
        self.path = path
        self.offset = offset
        where = ""
        if path is not None:
            where = f" at {path}"
        elif offset is not None:
            where = f" at byte {offset}"
        super().__init__(message + where)


class UnsupportedKindError(DecodeError):
    """Document used an enum value outside the closed set."""


class InvalidModelError(EcomodError):
    """An operation that requires a valid model was given an invalid one.

    Carries the full validation report so callers can surface the issues.
    """

    def __init__(self, report):
        self.report = report
        codes = sorted({i.code for i in report.issues if i.severity.value == "error"})
        super().__init__(f"model failed validation: {', '.join(codes)}")


class CompileError(EcomodError):
    """A validated model still could not be lowered to a simulation program."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


class EngineInvariantError(EcomodError):
    """A numeric invariant (ledger identity, non-negativity) broke mid-run.

    This signals an engine bug, never a user error.
    """


class TaxonNotFoundError(EcomodError):
    """Trait store lookup for an unknown taxon id."""


class InvalidQueryError(EcomodError):
    """Species search received an empty or blank query."""


class AttributeRangeError(EcomodError):
    """A stored attribute value is outside its legal range."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(message)


class TransportError(EcomodError):
    """Remote trait backend unreachable, timed out, or returned non-2xx."""


class StaleRevisionError(EcomodError):
    """Optimistic-concurrency conflict: the caller's revision is not current."""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"stale revision {expected}, store is at {actual}")


class StorageError(EcomodError):
    """Document store could not start or write."""
