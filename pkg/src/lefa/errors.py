"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class LefaError(Exception):
    """Base class for all toolkit errors."""


class EmptyDocument(LefaError):
    """A document expected to carry sentences has none."""


class EmptyCorpus(LefaError):
    """Statistics or exports requested over an empty corpus."""


class ProviderUnavailable(LefaError):
    """Embedding provider could not be reached after retries."""


class DimensionMismatch(LefaError):
    """Vector dimensionality differs from what the caller expects."""


class MissingEmbedding(LefaError):
    """File-backed store has no vector for a requested text."""

    def __init__(self, sha256: str, text: str):
        super().__init__(f"no embedding stored for sha256={sha256}")
        self.sha256 = sha256
        self.text = text


class ParseError(LefaError):
    """Malformed record in a corpus or resource file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SchemaVersionMismatch(LefaError):
    """Serialized corpus declares an unsupported schema version."""


class MissingResource(LefaError):
    """A lint rule is enabled but its backing resource is absent."""


class MissingGuidelines(LefaError):
    """Guideline-enriched prompt requested without a guideline catalog."""


class EndpointError(LefaError):
    """Chat-completion endpoint failed after retries."""


class EmptyResponse(LefaError):
    """Endpoint returned an empty or blank completion."""


class StageFailure(LefaError):
    """A staged simplification pipeline failed mid-way."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause
