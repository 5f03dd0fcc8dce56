"""JSON encoding of the data kinds used by the command line tool.

Complex scalars are two-element arrays [re, im]; matrices are arrays of row
arrays; covectors are single row arrays.  Floats pass through Python's
shortest round-trip repr, so decode(encode(x)) is bit-exact.  Every decoder
validates shapes against the declared sizes and raises ParseError with a
JSON-pointer-ish path on any mismatch.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ParseError
from .geometry import TotPoint, YTildePoint
from .hirz import ChartCoords, HirzADHM, chart_coords, hirz_adhm
from .linalg import ProjPoint
from .plane import PlaneADHM, plane_adhm

__all__ = [
    "encode",
    "decode",
    "loads",
    "dumps",
    "load_path",
]

KIND_PLANE = "plane_adhm"
KIND_HIRZ = "hirz_adhm"
KIND_CHART = "chart_coords"
KIND_TOT = "tot_point"
KIND_YTILDE = "ytilde_point"


def _pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _row(v) -> list:
    return [_pair(z) for z in np.asarray(v).ravel()]


def _matrix(m) -> list:
    m = np.asarray(m)
    return [[_pair(z) for z in row] for row in m]


def encode(obj) -> dict:
    if isinstance(obj, PlaneADHM):
        return {"kind": KIND_PLANE, "c": obj.c, "b1": _matrix(obj.b1),
                "b2": _matrix(obj.b2), "e": _row(obj.e)}
    if isinstance(obj, HirzADHM):
        return {"kind": KIND_HIRZ, "n": obj.n, "c": obj.c,
                "A1": _matrix(obj.A1), "A2": _matrix(obj.A2),
                "C": [_matrix(cq) for cq in obj.C], "e": _row(obj.e)}
    if isinstance(obj, ChartCoords):
        return {"kind": KIND_CHART, "m": obj.m, "n": obj.n, "c": obj.c,
                "B": _matrix(obj.B), "E": _matrix(obj.E), "e": _row(obj.e),
                "A2m": _matrix(obj.A2m)}
    if isinstance(obj, TotPoint):
        return {"kind": KIND_TOT, "y1": _pair(obj.y1), "y2": _pair(obj.y2),
                "u1": _pair(obj.u1), "u2": _pair(obj.u2)}
    if isinstance(obj, YTildePoint):
        return {"kind": KIND_YTILDE, "y1": _pair(obj.y1), "y2": _pair(obj.y2),
                "x1": _pair(obj.x1), "x2": _pair(obj.x2)}
    if isinstance(obj, ProjPoint):
        return {"point": [_pair(obj.lam1), _pair(obj.lam2)]}
    raise TypeError(f"encode: unsupported object type {type(obj).__name__}")


def _get(data, key, path):
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object", path)
    if key not in data:
        raise ParseError(f"missing key {key!r}", path)
    return data[key]


def _parse_int(data, key, path):
    v = _get(data, key, path)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an integer, got {v!r}", f"{path}/{key}")
    return v


def _parse_complex(v, path):
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v)):
        raise ParseError("expected a complex scalar [re, im]", path)
    z = complex(float(v[0]), float(v[1]))
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ParseError("complex scalar must be finite", path)
    return z


def _parse_row(v, length, path):
    if not isinstance(v, list) or len(v) != length:
        raise ParseError(f"expected a row of {length} complex scalars", path)
    return np.array([_parse_complex(t, f"{path}[{i}]") for i, t in enumerate(v)])


def _parse_matrix(v, rows, cols, path):
    if not isinstance(v, list) or len(v) != rows:
        raise ParseError(f"expected a matrix with {rows} rows", path)
    return np.array([_parse_row(r, cols, f"{path}[{i}]") for i, r in enumerate(v)])


def decode(data, path="$"):
    """Decode a JSON object into the value its ``kind`` field declares."""
    kind = _get(data, "kind", path)
    if kind == KIND_PLANE:
        c = _parse_int(data, "c", path)
        if c < 1:
            raise ParseError("c must be >= 1", f"{path}/c")
        return plane_adhm(
            _parse_matrix(_get(data, "b1", path), c, c, f"{path}/b1"),
            _parse_matrix(_get(data, "b2", path), c, c, f"{path}/b2"),
            _parse_row(_get(data, "e", path), c, f"{path}/e"),
        )
    if kind == KIND_HIRZ:
        n = _parse_int(data, "n", path)
        c = _parse_int(data, "c", path)
        if n < 1 or c < 1:
            raise ParseError("n and c must be >= 1", path)
        cs = _get(data, "C", path)
        if not isinstance(cs, list) or len(cs) != n:
            raise ParseError(f"expected {n} C-matrices", f"{path}/C")
        return hirz_adhm(
            n, c,
            _parse_matrix(_get(data, "A1", path), c, c, f"{path}/A1"),
            _parse_matrix(_get(data, "A2", path), c, c, f"{path}/A2"),
            tuple(_parse_matrix(cq, c, c, f"{path}/C[{q}]") for q, cq in enumerate(cs)),
            _parse_row(_get(data, "e", path), c, f"{path}/e"),
        )
    if kind == KIND_CHART:
        m = _parse_int(data, "m", path)
        n = _parse_int(data, "n", path)
        c = _parse_int(data, "c", path)
        if n < 1 or c < 1:
            raise ParseError("n and c must be >= 1", path)
        return chart_coords(
            m, n, c,
            _parse_matrix(_get(data, "B", path), c, c, f"{path}/B"),
            _parse_matrix(_get(data, "E", path), c, c, f"{path}/E"),
            _parse_row(_get(data, "e", path), c, f"{path}/e"),
            _parse_matrix(_get(data, "A2m", path), c, c, f"{path}/A2m"),
        )
    if kind == KIND_TOT:
        vals = [_parse_complex(_get(data, k, path), f"{path}/{k}")
                for k in ("y1", "y2", "u1", "u2")]
        return TotPoint(*vals)  # relation checked where the twist n is known
    if kind == KIND_YTILDE:
        vals = [_parse_complex(_get(data, k, path), f"{path}/{k}")
                for k in ("y1", "y2", "x1", "x2")]
        return YTildePoint(*vals)
    raise ParseError(f"unknown kind {kind!r}", f"{path}/kind")


def dumps(data) -> str:
    """JSON text for a library object (or an already-encoded dict)."""
    if not isinstance(data, (dict, list)):
        data = encode(data)
    return json.dumps(data, indent=2, allow_nan=False)


def loads(text: str, path="$"):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", path) from exc
    return decode(data, path)


def load_path(filename: str):
    try:
        with open(filename, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", filename) from exc
    return loads(text, filename)
