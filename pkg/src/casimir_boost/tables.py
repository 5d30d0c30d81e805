"""Number rendering and CSV/JSON emitters shared by the command-line tools.

Floats are written with ``repr`` (shortest round-trip, at most 17 significant
digits) in both formats, so the same run yields byte-identical numbers.
Fractions are written as ``"p/q"`` strings next to a decimal rendering.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import numpy as np

from .core import is_exact


def exact_text(x) -> str | None:
    if not is_exact(x):
        return None
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal(x) -> float:
    return float(x)


def decimal_text(x) -> str:
    return repr(float(x))


def scalar_json(x) -> dict:
    return {"exact": exact_text(x), "decimal": decimal(x)}


def parse_scalar_json(obj):
    """Inverse of :func:`scalar_json`, preferring the exact rendering."""
    if obj["exact"] is not None:
        return Fraction(obj["exact"])
    return float(obj["decimal"])


def coefficient_text(x) -> str:
    return exact_text(x) if is_exact(x) else decimal_text(x)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([r if isinstance(r, str) else decimal_text(r) for r in row])
    return buf.getvalue()


def to_json(doc) -> str:
    return json.dumps(doc, indent=2, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, Fraction):
        return scalar_json(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")
