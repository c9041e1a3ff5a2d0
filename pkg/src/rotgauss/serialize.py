"""Deterministic JSON with 17 significant digits."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = f"{x:.17g}"
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def _encode(obj, indent, level) -> str:
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    sep = "," if indent is None else ","
    colon = ":" if indent is None else ": "
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, enum.Enum):
        return json.dumps(obj.value)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if is_dataclass(obj) and not isinstance(obj, type):
        return _encode(asdict(obj), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}{colon}{_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in seq]
        return "[" + sep.join(items) + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    """JSON text for ``obj``; floats keep 17 significant digits, non-finite become null."""
    return _encode(obj, indent, 0)
