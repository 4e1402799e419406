"""Shared helpers for the JSON game/state schemas, with field-path errors."""

from __future__ import annotations

__all__ = ["SchemaError", "require_mapping", "require_number"]


class SchemaError(ValueError):
    """Malformed schema input; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def require_mapping(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    return obj


def require_number(obj: dict, key: str, path: str) -> float:
    if key not in obj:
        raise SchemaError(path, "missing required field")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, f"expected a number, got {value!r}")
    return float(value)
