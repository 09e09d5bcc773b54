"""Body-spec files, report serialisation and CSV tables.

Body spec (JSON, schema 1)::

    {"schema": 1, "kind": "ellipse", "semi_axes": [2, 1], "resolution": 2048,
     "center": [0, 0], "rotation": 0.3}

Kinds and their fields:

===============  ==========================================
polygon          vertices (2D points)
polytope         vertices (3D points)
disk             radius
ellipse          semi_axes (2 values)
ball             radius
ellipsoid        semi_axes (3 values)
regular_polygon  count, radius
cube             side, dim (2 or 3, default 3)
simplex          dim (2 or 3, default 3), edge (optional)
random_hull      count, dim (default 3), seed
===============  ==========================================

``resolution`` applies to the smooth kinds.  ``center`` translates and
``rotation`` is an angle (2D) or a rotation matrix applied about the
origin before translation.

Reports are JSON objects ``{command, config, body_digest, samples,
summary}`` with every float written to 17 significant digits.
"""

import hashlib
import json
import math

import numpy as np

from . import shapes
from .errors import ParseError
from .geometry import affine_transform, build_polygon, build_polytope

SCHEMA_VERSION = 1

SMOOTH_DEFAULTS = {"disk": 4096, "ellipse": 2048, "ball": 10000, "ellipsoid": 10000}

KIND_FIELDS = {
    "polygon": {"vertices"},
    "polytope": {"vertices"},
    "disk": {"radius"},
    "ellipse": {"semi_axes"},
    "ball": {"radius"},
    "ellipsoid": {"semi_axes"},
    "regular_polygon": {"count", "radius"},
    "cube": {"side", "dim"},
    "simplex": {"dim", "edge"},
    "random_hull": {"count", "dim", "seed"},
}
COMMON_FIELDS = {"schema", "kind", "resolution", "center", "rotation"}


def _number(spec, key, default=None, positive=True):
    if key not in spec:
        if default is None:
            raise ParseError(f"missing field '{key}'", field=key)
        return default
    x = spec[key]
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise ParseError(f"field '{key}' must be a finite number", field=key)
    if positive and x <= 0:
        raise ParseError(f"field '{key}' must be positive", field=key)
    return x


def _integer(spec, key, default=None, choices=None, positive=True):
    x = _number(spec, key, default, positive)
    if int(x) != x:
        raise ParseError(f"field '{key}' must be an integer", field=key)
    if choices and x not in choices:
        raise ParseError(f"field '{key}' must be one of {sorted(choices)}", field=key)
    return int(x)


def _array(spec, key, shape):
    if key not in spec:
        raise ParseError(f"missing field '{key}'", field=key)
    try:
        a = np.asarray(spec[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field '{key}' must be numeric", field=key) from exc
    if a.ndim != len(shape) or any(s is not None and s != n for s, n in zip(shape, a.shape)):
        raise ParseError(f"field '{key}' has shape {a.shape}, expected {shape}", field=key)
    if not np.all(np.isfinite(a)):
        raise ParseError(f"field '{key}' has non-finite entries", field=key)
    return a


def body_from_spec(spec, resolution=None, seed=None):
    """Build a body from a parsed spec dictionary.

    ``resolution`` and ``seed`` fill in fields the body spec leaves out.
    """
    if not isinstance(spec, dict):
        raise ParseError("body spec must be a JSON object")
    if spec.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema {spec.get('schema')!r}", field="schema")
    kind = spec.get("kind")
    if kind not in KIND_FIELDS:
        raise ParseError(f"unknown kind {kind!r}", field="kind")
    extra = set(spec) - KIND_FIELDS[kind] - COMMON_FIELDS
    if extra:
        key = sorted(extra)[0]
        raise ParseError(f"unexpected field '{key}' for kind {kind}", field=key)

    res = None
    if kind in SMOOTH_DEFAULTS:
        res = _integer(spec, "resolution", resolution or SMOOTH_DEFAULTS[kind])

    if kind == "polygon":
        body = build_polygon(_array(spec, "vertices", (None, 2)))
    elif kind == "polytope":
        body = build_polytope(_array(spec, "vertices", (None, 3)))
    elif kind == "disk":
        body = shapes.disk(_number(spec, "radius", 1.0), res)
    elif kind == "ellipse":
        a, b = _array(spec, "semi_axes", (2,))
        body = shapes.ellipse(a, b, res)
    elif kind == "ball":
        body = shapes.ball(_number(spec, "radius", 1.0), res)
    elif kind == "ellipsoid":
        a, b, c = _array(spec, "semi_axes", (3,))
        body = shapes.ellipsoid(a, b, c, res)
    elif kind == "regular_polygon":
        body = shapes.regular_polygon(_integer(spec, "count"), _number(spec, "radius", 1.0))
    elif kind == "cube":
        body = shapes.cube(_number(spec, "side", 2.0), _integer(spec, "dim", 3, {2, 3}))
    elif kind == "simplex":
        edge = _number(spec, "edge") if "edge" in spec else None
        body = shapes.simplex(_integer(spec, "dim", 3, {2, 3}), edge)
    else:
        s = _integer(spec, "seed", positive=False) if "seed" in spec else (seed or 0)
        body = shapes.random_hull(_integer(spec, "count"), _integer(spec, "dim", 3, {2, 3}), s)

    if "rotation" in spec or "center" in spec:
        d = body.dim
        Q = np.eye(d)
        if "rotation" in spec:
            if d == 2 and isinstance(spec["rotation"], (int, float)):
                a = float(spec["rotation"])
                Q = np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
            else:
                Q = _array(spec, "rotation", (d, d))
                if not np.allclose(Q @ Q.T, np.eye(d), atol=1e-9):
                    raise ParseError("rotation matrix is not orthogonal", field="rotation")
        shift = _array(spec, "center", (d,)) if "center" in spec else None
        body = affine_transform(body, Q, shift)
    return body


def parse_body_spec(text, resolution=None, seed=None):
    """Body from the JSON text of a spec file."""
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    return body_from_spec(spec, resolution, seed)


def load_body(path, resolution=None, seed=None):
    with open(path, encoding="utf-8") as fh:
        return parse_body_spec(fh.read(), resolution, seed)


def body_digest(body):
    """SHA-256 of the little-endian vertex (and face) arrays."""
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(body.vertices, dtype="<f8").tobytes())
    if body.dim == 3:
        h.update(np.ascontiguousarray(body.faces, dtype="<i8").tobytes())
    return h.hexdigest()


# -- serialisation ------------------------------------------------------------


def format_float(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _plain(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj, indent=0):
    """JSON text with floats at 17 significant digits; sample rows stay on one line."""
    obj = _plain(obj)
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, (list, tuple)):
        obj = [_plain(v) for v in obj]
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + "  " * indent + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    return json.dumps(str(obj))


def make_report(command, config, body, columns, rows, summary):
    """Report dictionary; ``samples`` is a list of rows named by ``columns``."""
    return {"command": command, "config": config,
            "body_digest": None if body is None else body_digest(body),
            "columns": list(columns), "samples": [list(r) for r in rows], "summary": summary}


def write_report(report, fh):
    fh.write(dumps(report) + "\n")


def write_csv(columns, rows, fh):
    fh.write(",".join(columns) + "\n")
    for r in rows:
        fh.write(",".join(format_float(x) for x in r) + "\n")


def read_report(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def read_csv(path):
    """``(columns, data)`` from a CSV table written by ``write_csv``."""
    with open(path, encoding="utf-8") as fh:
        columns = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return columns, data
