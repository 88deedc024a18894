"""Deterministic CSV / JSON emission.

All floats are written with 17 significant digits, which round-trips any
IEEE double exactly, so re-running a scenario reproduces output files byte
for byte.  Complex numbers are encoded as two-element [re, im] arrays.
"""

from __future__ import annotations

import os

import numpy as np

_BOOL = (bool, np.bool_)
_INT = (int, np.integer)
_FLOAT = (float, np.floating)
_COMPLEX = (complex, np.complexfloating)


def fmt_float(x: float) -> str:
    s = format(float(x), ".17g")
    # keep a decimal marker so JSON parses the value back as a float
    # (plain "-0" would round-trip through int and drop the sign)
    if all(c in "-0123456789" for c in s):
        s += ".0"
    return s


def fmt_cell(value) -> str:
    if isinstance(value, _BOOL):
        return "true" if value else "false"
    if isinstance(value, _INT):
        return str(int(value))
    if isinstance(value, _FLOAT):
        return fmt_float(value)
    if isinstance(value, _COMPLEX):
        value = complex(value)
        return fmt_float(value.real) + "+" + fmt_float(value.imag) + "j"
    return str(value)


def write_csv(path, header, rows) -> None:
    """Write rows of scalars as CSV; empty rows produce a header-only file."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt_cell(v) for v in row))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _json_fragment(obj, indent, out) -> None:
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif isinstance(obj, _BOOL):
        out.append("true" if obj else "false")
    elif isinstance(obj, _INT):
        out.append(str(int(obj)))
    elif isinstance(obj, _FLOAT):
        out.append(fmt_float(obj))
    elif isinstance(obj, _COMPLEX):
        obj = complex(obj)
        out.append("[" + fmt_float(obj.real) + ", " + fmt_float(obj.imag) + "]")
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(obj):
            out.append("  " * (indent + 1))
            _json_fragment(item, indent + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (key, value) in enumerate(items):
            out.append("  " * (indent + 1) + '"' + str(key) + '": ')
            _json_fragment(value, indent + 1, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def json_dumps(obj) -> str:
    """JSON text with deterministic layout and 17-digit floats."""
    out: list[str] = []
    _json_fragment(obj, 0, out)
    return "".join(out) + "\n"


def write_json(path, obj) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(json_dumps(obj))


def ensure_dir(path) -> str:
    os.makedirs(path, exist_ok=True)
    return path
