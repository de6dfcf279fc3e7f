"""JSON output with 17 significant digits for bit-faithful replay."""

from __future__ import annotations

import json
import math

import numpy as np

__all__ = ["dumps", "loads", "dump_file", "load_file"]


def _fmt_float(x: float) -> str:
    # JSON has no inf/nan literals; failed-claim residuals are written as strings
    if not math.isfinite(x):
        return json.dumps(repr(x))
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def _emit(obj, out: list, indent: int | None, level: int):
    nl = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        out.append(json.dumps(bool(obj) if obj is not None else None))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            out.append(("," if i else "") + nl + json.dumps(str(k)) + ": ")
            _emit(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = obj.tolist() if isinstance(obj, np.ndarray) else obj
        if not seq:
            out.append("[]")
            return
        flat = all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq)
        out.append("[")
        for i, v in enumerate(seq):
            out.append(("," if i else "") + ("" if flat else nl) + (" " if flat and i else ""))
            _emit(v, out, indent, level + 1)
        out.append(("" if flat else end) + "]")
    elif hasattr(obj, "to_json"):
        _emit(obj.to_json(), out, indent, level)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int | None = 1) -> str:
    out: list = []
    _emit(obj, out, indent, 0)
    return "".join(out)


def loads(text: str):
    return json.loads(text)


def dump_file(obj, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj) + "\n")


def load_file(path: str):
    with open(path) as fh:
        return json.load(fh)
