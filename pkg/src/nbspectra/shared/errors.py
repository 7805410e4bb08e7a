"""Error types for nbspectra."""

from typing import Any, Dict, List, Optional, Tuple


class NbSpectraError(Exception):
    """Base error for all nbspectra errors."""

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for response."""
        return {"error": str(self), "type": type(self).__name__}


class ValidationError(NbSpectraError):
    """Validation error with field information and suggestions."""

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        suggestions: Optional[List[str]] = None,
    ):
        super().__init__(message)
        self.field = field
        self.suggestions = suggestions or []

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        if self.field:
            result["field"] = self.field
        if self.suggestions:
            result["suggestions"] = self.suggestions
        return result


class GuardError(ValidationError):
    """A spectral parameter hit the excluded set lambda^2 = H_ij H_ji."""

    def __init__(
        self,
        message: str,
        pair: Optional[Tuple[int, int]] = None,
        value: Optional[float] = None,
    ):
        super().__init__(message, field="lambda")
        self.pair = pair
        self.value = value

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        if self.pair is not None:
            result["pair"] = list(self.pair)
        if self.value is not None:
            result["value"] = self.value
        return result


class SizeGuardError(ValidationError):
    """Input is too large for an exhaustive or dense code path."""

    def __init__(
        self,
        message: str,
        limit: Optional[float] = None,
        actual: Optional[float] = None,
        field: Optional[str] = None,
    ):
        super().__init__(message, field=field)
        self.limit = limit
        self.actual = actual

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        if self.limit is not None:
            result["limit"] = self.limit
        if self.actual is not None:
            result["actual"] = self.actual
        return result


class ConvergenceError(NbSpectraError):
    """An eigensolver failed; carries whatever it produced before failing."""

    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        if self.partial is not None:
            result["partial"] = repr(self.partial)
        return result


class ConfigError(NbSpectraError):
    """Experiment configuration could not be parsed or validated."""

    def __init__(self, message: str, line: Optional[int] = None):
        """Initialize ConfigError.

        Args:
            message: What is wrong with the configuration
            line: 1-based line number in the config text, when known
        """
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        if self.line is not None:
            result["line"] = self.line
        return result


class NotFoundError(NbSpectraError):
    """Resource not found error."""

    def __init__(
        self,
        message: str,
        resource_type: Optional[str] = None,
        resource_id: Optional[str] = None,
        suggestions: Optional[List[str]] = None,
    ):
        # If resource_type and id provided, construct message
        if resource_type and resource_id:
            message = f"{resource_type} '{resource_id}' not found"

        super().__init__(message)
        self.resource_type = resource_type
        self.resource_id = resource_id
        self.suggestions = suggestions or []

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        if self.resource_type:
            result["resource_type"] = self.resource_type
        if self.resource_id:
            result["resource_id"] = self.resource_id
        if self.suggestions:
            result["suggestions"] = self.suggestions
        return result
