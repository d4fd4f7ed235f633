"""JSON interchange for rings and factor systems.

A factor-system file looks like::

    {"ring": {"kind": "modular", "m": 4},
     "n": 2,
     "factors": {"type": "binary", "s": 2, "classes": [1, 2]}}

``factors`` may instead be ``{"type": "coboundary", "s": 2, "g": [[0, 1], [0, 0]]}``
or ``{"type": "explicit", "table": [...]}``.  File arrays are 0-based:
``table[i][j][k]`` holds s_{i+1, j+1, k+1}, ``classes[i]`` is the class label
(1..k) of index i+1 and ``g[i][j]`` is g(i+1, j+1).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .factors import FactorSystem, binary_system, coboundary_system, validate
from .ring import BaseRing


class FormatError(ValueError):
    """Malformed input file; the message carries the offending location."""


def parse_ring(spec: str) -> BaseRing:
    """``"mod:8"``, ``"Z/8"`` or ``"Z"``."""
    text = spec.strip()
    if text in ("Z", "integers"):
        return BaseRing.integers()
    for prefix in ("mod:", "Z/"):
        if text.startswith(prefix):
            try:
                return BaseRing.mod(int(text[len(prefix):]))
            except ValueError as exc:
                raise FormatError(f"bad ring {spec!r}: {exc}") from None
    raise FormatError(f"bad ring {spec!r}; expected mod:<m> or Z")


def _get(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    return obj[key]


def _ring_field(data) -> BaseRing:
    spec = _get(data, "ring", "$")
    if isinstance(spec, str):
        return parse_ring(spec)
    try:
        return BaseRing.from_json(spec)
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"$.ring: {exc}") from None


def system_from_dict(data: dict) -> FactorSystem:
    """Build (and certify) a system; raises FormatError or a library error."""
    ring = _ring_field(data)
    n = _get(data, "n", "$")
    factors = _get(data, "factors", "$")
    kind = _get(factors, "type", "$.factors")
    if kind == "explicit":
        table = _get(factors, "table", "$.factors")
        shape = np.shape(table)
        if shape != (n, n, n):
            raise FormatError(f"$.factors.table: shape {shape} does not match n = {n}")
        return validate(ring, table, s=factors.get("s"))
    if kind == "binary":
        classes = _get(factors, "classes", "$.factors")
        if len(classes) != n:
            raise FormatError(f"$.factors.classes: {len(classes)} labels for n = {n}")
        return binary_system(ring, classes, _get(factors, "s", "$.factors"))
    if kind == "coboundary":
        g = _get(factors, "g", "$.factors")
        if np.shape(g) != (n, n):
            raise FormatError(f"$.factors.g: shape {np.shape(g)} does not match n = {n}")
        return coboundary_system(ring, g, _get(factors, "s", "$.factors"))
    raise FormatError(f"$.factors.type: unknown type {kind!r}")


def system_to_dict(sys: FactorSystem, classes=None, g=None) -> dict:
    """Serialize; pass ``classes`` or ``g`` to keep the generating description."""
    out = {"ring": sys.ring.to_json(), "n": sys.n}
    if classes is not None:
        out["factors"] = {"type": "binary", "s": sys.s, "classes": [int(c) for c in classes]}
    elif g is not None:
        out["factors"] = {"type": "coboundary", "s": sys.s, "g": np.asarray(g).tolist()}
    else:
        out["factors"] = {"type": "explicit", "table": [[[int(v) for v in row] for row in plane]
                                                        for plane in sys.table]}
        if sys.s is not None:
            out["factors"]["s"] = sys.s
    return out


def read_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_system(path) -> FactorSystem:
    data = read_json(path)
    try:
        return system_from_dict(data)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from None


def load_raw_table(path):
    """(ring, table) of an explicit-table file, without certifying it."""
    data = read_json(path)
    ring = _ring_field(data)
    factors = _get(data, "factors", "$")
    table = np.asarray(_get(factors, "table", "$.factors"))
    if table.ndim != 3 or len(set(table.shape)) != 1:
        raise FormatError(f"{path}: $.factors.table has shape {table.shape}")
    return ring, table


def save_system(path, sys: FactorSystem, **kw) -> None:
    Path(path).write_text(json.dumps(system_to_dict(sys, **kw), indent=2) + "\n")
