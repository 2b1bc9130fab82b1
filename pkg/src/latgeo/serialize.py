"""JSON encoding: rationals as ``"p/q"`` strings, polytopes as ``{"dim", "vertices"}``."""

import json
from fractions import Fraction

from .errors import SchemaError
from .polytope import hull_from_points

SCHEMA = "latgeo/1"


def rat(x):
    return str(Fraction(x))


def vec(v):
    return [rat(c) for c in v]


def parse_rat(value, where="value"):
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{where}: expected an integer or a 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            if "/" in value:
                num, den = value.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(int(value))
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{where}: malformed rational {value!r}") from None
    raise SchemaError(f"{where}: expected an integer or a 'p/q' string, got {type(value).__name__}")


def parse_vec(values, where="vector"):
    if not isinstance(values, list):
        raise SchemaError(f"{where}: expected a list")
    return tuple(parse_rat(v, f"{where}[{i}]") for i, v in enumerate(values))


def parse_int_vec(values, where="vector"):
    out = parse_vec(values, where)
    if any(c.denominator != 1 for c in out):
        raise SchemaError(f"{where}: expected integers")
    return tuple(int(c) for c in out)


def polytope_to_json(P):
    return {"dim": P.dim, "vertices": [vec(v) for v in P.vertices]}


def polytope_from_json(obj, allow_lower_dim=False):
    """Read the polytope schema; extra keys are ignored so command output can be piped."""
    if not isinstance(obj, dict):
        raise SchemaError("polytope: expected an object")
    if "vertices" not in obj:
        if isinstance(obj.get("polytope"), dict):
            return polytope_from_json(obj["polytope"], allow_lower_dim)
        raise SchemaError("polytope: missing 'vertices'")
    verts = obj["vertices"]
    if not isinstance(verts, list) or not verts:
        raise SchemaError("polytope: 'vertices' must be a nonempty list")
    pts = [parse_vec(v, f"vertices[{i}]") for i, v in enumerate(verts)]
    dim = obj.get("dim", len(pts[0]))
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise SchemaError("polytope: 'dim' must be an integer")
    for i, p in enumerate(pts):
        if len(p) != dim:
            raise SchemaError(f"vertices[{i}]: expected {dim} coordinates, got {len(p)}")
    return hull_from_points(pts, allow_lower_dim=allow_lower_dim)


def loads(text, source="input"):
    """Parse JSON, turning decoder errors into :class:`SchemaError` with a position."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"{source}: malformed JSON: {exc.msg}",
            line=exc.lineno,
            column=exc.colno,
            position=exc.pos,
        ) from None


def dumps(obj):
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))
