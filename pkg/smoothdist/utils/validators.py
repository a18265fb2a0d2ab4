"""
Argument validation for the command-line front end.
"""

from pathlib import Path
from typing import Any, List, Optional, Sequence, Union

Number = Union[int, float]


def validate_required(value: Any, field_name: str) -> None:
    """
    Validate that a required field is not None or empty.

    Args:
        value: Value to validate
        field_name: Name of the field for error messages

    Raises:
        ValueError: If value is None or empty
    """
    if value is None:
        raise ValueError(f"{field_name} is required")

    if isinstance(value, str) and not value.strip():
        raise ValueError(f"{field_name} cannot be empty")

    if isinstance(value, (list, dict, set, tuple)) and not value:
        raise ValueError(f"{field_name} cannot be empty")


def validate_range(
        value: Number,
        min_value: Optional[Number] = None,
        max_value: Optional[Number] = None,
        field_name: str = "Value",
        exclusive_min: bool = False,
) -> None:
    """
    Validate numeric range.

    Args:
        value: Number to validate
        min_value: Minimum value
        max_value: Maximum value
        field_name: Name of the field for error messages
        exclusive_min: Require value > min_value instead of >=

    Raises:
        ValueError: If range constraints are not met
    """
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{field_name} must be a number")

    if value != value:
        raise ValueError(f"{field_name} must not be NaN")

    if min_value is not None:
        if exclusive_min and value <= min_value:
            raise ValueError(f"{field_name} must be greater than {min_value}")
        if value < min_value:
            raise ValueError(f"{field_name} must be at least {min_value}")

    if max_value is not None and value > max_value:
        raise ValueError(f"{field_name} must be at most {max_value}")


def validate_positive(value: Number, field_name: str = "Value") -> None:
    validate_range(value, 0, None, field_name, exclusive_min=True)


def validate_choice(value: Any, choices: Sequence[Any], field_name: str = "Value") -> None:
    """
    Validate that value is one of the allowed choices.

    Raises:
        ValueError: If value is not in choices
    """
    if value not in choices:
        raise ValueError(f"{field_name} must be one of: {', '.join(map(str, choices))}")


def validate_file_exists(file_path: Union[str, Path]) -> None:
    """
    Validate that a file exists.

    Raises:
        FileNotFoundError: If file does not exist
    """
    path = Path(file_path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {file_path}")
    if not path.is_file():
        raise ValueError(f"Path is not a file: {file_path}")


def parse_vector(text: str, dim: Optional[int] = None, field_name: str = "Vector") -> List[float]:
    """
    Parse a comma-separated list of numbers such as "1,0,0".

    Args:
        text: Comma-separated numbers
        dim: Required length, if any
        field_name: Name of the field for error messages

    Returns:
        List of floats

    Raises:
        ValueError: On malformed input or a length mismatch
    """
    validate_required(text, field_name)
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"{field_name} must be comma-separated numbers, got {text!r}") from None
    if dim is not None and len(values) != dim:
        raise ValueError(f"{field_name} must have {dim} components, got {len(values)}")
    return values
