"""Deterministic report serialization.

Reports are emitted as JSON with floats printed at 17 significant digits
(lossless double round-trip) and insertion-ordered keys, so identical
inputs give byte-identical output. Curve data goes to CSV with the same
float format; points outside a curve's domain become empty fields.
"""

from __future__ import annotations

import dataclasses
import math
from enum import Enum

import numpy as np


def fmt_float(x):
    x = float(x)
    if math.isnan(x):
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def to_jsonable(obj):
    """Normalize dataclasses, enums and numpy values to plain containers."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def _escape(s):
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def dumps(obj, indent=0, _level=0):
    """JSON emitter with fixed float formatting; non-finite floats -> null."""
    obj = to_jsonable(obj)
    pad = " " * (indent * (_level + 1)) if indent else ""
    end_pad = " " * (indent * _level) if indent else ""
    sep = ",\n" if indent else ", "
    nl = "\n" if indent else ""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return "null"
        return format(obj, ".17g")
    if isinstance(obj, str):
        return _escape(obj)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        items = [dumps(v, indent, _level + 1) for v in obj]
        return "[" + nl + sep.join(pad + it for it in items) + nl + end_pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            _escape(str(k)) + ": " + dumps(v, indent, _level + 1) for k, v in obj.items()
        ]
        return "{" + nl + sep.join(pad + it for it in items) + nl + end_pad + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def write_csv(stream, header, columns):
    """CSV with LF endings, '.' decimals, 17 significant digits, empty
    fields for NaN."""
    stream.write(",".join(header) + "\n")
    n = len(columns[0])
    for i in range(n):
        stream.write(",".join(fmt_float(col[i]) for col in columns) + "\n")
