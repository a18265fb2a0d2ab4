"""
JSON codecs for polytopes.

Format: {"dim": n, "halfspaces": [{"u": [...], "v": s}, ...]}. The covering
ball is recomputed on load and never written.
"""

import json
from pathlib import Path
from typing import Any, Dict, Union

from ..errors import ConfigError
from .polytope import HalfSpacePolytope, make_polytope

PathLike = Union[str, Path]


def polytope_to_dict(polytope: HalfSpacePolytope) -> Dict[str, Any]:
    return {
        "dim": polytope.dim,
        "halfspaces": [{"u": list(hs.u), "v": hs.v} for hs in polytope.halfspaces],
    }


def polytope_from_dict(data: Dict[str, Any]) -> HalfSpacePolytope:
    """
    Decode a polytope document.

    Raises:
        ConfigError: If keys are missing or malformed
    """
    try:
        dim = int(data["dim"])
        pairs = [(list(map(float, hs["u"])), float(hs["v"])) for hs in data["halfspaces"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed polytope document: {e}") from e
    return make_polytope(pairs, dim)


def load_polytope(path: PathLike) -> HalfSpacePolytope:
    """Read a polytope JSON file."""
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON: {e}") from e
    return polytope_from_dict(data)


def save_polytope(polytope: HalfSpacePolytope, path: PathLike) -> None:
    """Write a polytope JSON file (UTF-8, newline-terminated)."""
    with open(path, "w", encoding="utf-8") as f:
        json.dump(polytope_to_dict(polytope), f, indent=2)
        f.write("\n")
