"""Base model classes for symwave's Pydantic models."""

import logging
from typing import Any, Dict, Type, TypeVar

from pydantic import BaseModel, ConfigDict, ValidationError

from ..errors import ConfigError

logger = logging.getLogger(__name__)

# Type variable for generic model methods
T = TypeVar("T", bound="BaseSymwaveModel")


def error_key_path(error: ValidationError) -> str:
    """
    Render the location of the first validation error as a dotted key path.

    Args:
        error: Pydantic validation error

    Returns:
        Key path such as ``model.kappa`` or ``grid.nx``
    """
    errors = error.errors()
    if not errors:
        return ""
    return ".".join(str(part) for part in errors[0]["loc"])


class BaseSymwaveModel(BaseModel):
    """
    Base class for all symwave value models.

    Models are immutable and reject unknown keys, so a typo in an experiment
    definition fails loudly instead of silently falling back to a default.
    """

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        populate_by_name=True,
    )

    def model_dump_report(self, **kwargs) -> Dict[str, Any]:
        """
        Serialize the model to a JSON-compatible dictionary.

        Args:
            **kwargs: Additional arguments to pass to model_dump

        Returns:
            Dictionary with plain Python types only
        """
        kwargs.setdefault("mode", "json")
        return self.model_dump(**kwargs)

    @classmethod
    def from_payload(cls: Type[T], data: Dict[str, Any]) -> T:
        """
        Create a model instance from decoded JSON.

        Unlike plain validation this converts pydantic failures into a
        ConfigError carrying the offending key path.

        Args:
            data: Dictionary decoded from a JSON document

        Returns:
            Validated model instance
        """
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            key_path = error_key_path(e)
            logger.debug(f"Validation error in {cls.__name__} at {key_path}: {e}")
            message = e.errors()[0]["msg"] if e.errors() else str(e)
            raise ConfigError(message, key_path=key_path) from e
