"""
Utility functions and helpers for the smoothdist command line.
"""

from .display import display_key_value_table, display_report, print_banner, print_info
from .validators import parse_vector, validate_choice, validate_file_exists, validate_range

__all__ = [
    "print_banner",
    "print_info",
    "display_key_value_table",
    "display_report",
    "parse_vector",
    "validate_choice",
    "validate_file_exists",
    "validate_range",
]
