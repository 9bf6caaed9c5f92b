"""
Serialization utilities for Pydantic models and numerical results.

JSON output is deterministic: keys are sorted and floats are written with
enough digits to round-trip float64 exactly.
"""

import json
import math
from typing import Any, Type, TypeVar

import numpy as np
from pydantic import ValidationError

from ..errors import ConfigError
from ..models.base import error_key_path

T = TypeVar("T")

FLOAT_FORMAT = "%.17g"


def format_float(value: float) -> str:
    """Shortest text that reads back to the same float64."""
    return FLOAT_FORMAT % value


def to_serializable(obj: Any) -> Any:
    """
    Convert any object to a JSON-serializable format.

    Handles Pydantic models, numpy arrays and scalars, tuples and nested
    containers. Non-finite floats become strings so the output stays valid JSON.

    Args:
        obj: Any Python object

    Returns:
        JSON-serializable version of the object
    """
    if obj is None:
        return None
    if hasattr(obj, "model_dump"):
        return to_serializable(obj.model_dump(by_alias=True))
    if isinstance(obj, np.ndarray):
        return [to_serializable(item) for item in obj.tolist()]
    if isinstance(obj, np.generic):
        return to_serializable(obj.item())
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [to_serializable(item) for item in obj]
    if isinstance(obj, dict):
        return {str(k): to_serializable(v) for k, v in obj.items()}
    return obj


def serialize_to_json(obj: Any, **kwargs) -> str:
    """
    Convert any object to a JSON string.

    Args:
        obj: Any Python object
        **kwargs: Additional arguments to pass to json.dumps

    Returns:
        JSON string representation
    """
    kwargs.setdefault("indent", 2)
    kwargs.setdefault("sort_keys", True)
    return json.dumps(to_serializable(obj), **kwargs)


def deserialize_model(data: Any, model_class: Type[T]) -> T:
    """
    Deserialize data (dict, JSON string or model) into a Pydantic model.

    Raises:
        ConfigError: with the key path of the first invalid entry
    """
    if data is None:
        raise ConfigError(f"cannot deserialize None to {model_class.__name__}")
    if isinstance(data, model_class):
        return data
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON: {e.msg}")
    try:
        return model_class.model_validate(data)
    except ValidationError as e:
        raise ConfigError(e.errors()[0]["msg"], key_path=error_key_path(e)) from e
