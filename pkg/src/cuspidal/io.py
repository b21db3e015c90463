"""JSON schemas, loaders and writers for the command line front end."""

import csv
import json

import jsonschema

from .curves import CurveGerm
from .jets import Jet1, Jet2, _Jet
from .surface import NormalFormData, SurfaceGerm


class SchemaError(ValueError):
    """Input does not match the declared schema; ``location`` is a JSON path."""

    def __init__(self, message, location="$"):
        super().__init__(f"{location}: {message}")
        self.location = location


NUMBER = {"type": "number"}

JET = {
    "type": "object",
    "required": ["vars", "order", "coeffs"],
    "properties": {
        "vars": {"enum": [1, 2]},
        "order": {"type": "integer", "minimum": 0},
        "coeffs": {"type": "array", "items": {"type": "array", "items": NUMBER,
                                              "minItems": 2, "maxItems": 3}},
    },
}

CASE1 = {
    "type": "object",
    "required": ["epsilon", "c1", "c2", "c3"],
    "properties": {"kind": {"const": "case1"}, "epsilon": {"enum": [-1, 1]},
                   "c1": NUMBER, "c2": NUMBER, "c3": NUMBER},
}

CASE2 = {
    "type": "object",
    "required": ["epsilon", "d2", "d3", "d4"],
    "properties": {"kind": {"const": "case2"}, "epsilon": {"enum": [-1, 1]},
                   "d2": NUMBER, "d3": NUMBER, "d4": NUMBER},
}

NORMAL_FORM = {
    "type": "object",
    "required": ["a20", "a30", "b20", "b30", "b12", "b03"],
    "properties": {
        **{k: NUMBER for k in NormalFormData.SURFACE_FIELDS},
        "boundary": {"anyOf": [{"type": "null"}, CASE1, CASE2]},
    },
}

GERM = {
    "type": "object",
    "required": ["f"],
    "properties": {
        "f": {"type": "array", "items": JET, "minItems": 3, "maxItems": 3},
        "b": {"type": "array", "items": JET, "minItems": 2, "maxItems": 2},
        "order": {"type": "integer", "minimum": 1},
    },
}

INVARIANTS_ITEM = {"anyOf": [NORMAL_FORM, GERM,
                             {"type": "object", "required": ["normal_form"],
                              "properties": {"normal_form": NORMAL_FORM}}]}

INVARIANTS = {"anyOf": [INVARIANTS_ITEM, {"type": "array", "items": INVARIANTS_ITEM}]}

CURVE = {
    "type": "object",
    "anyOf": [{"required": ["gamma"]}, {"required": ["components"]}],
    "properties": {
        "gamma": {"type": "array", "items": JET, "minItems": 3, "maxItems": 3},
        "components": {"type": "array", "items": JET, "minItems": 3, "maxItems": 3},
    },
}

SCALAR_FUNCTION = {
    "anyOf": [
        NUMBER,
        {"type": "array", "items": NUMBER, "minItems": 1},
        {"type": "object", "required": ["poly"],
         "properties": {"poly": {"type": "array", "items": NUMBER, "minItems": 1}}},
        {"type": "object", "required": ["t", "values"],
         "properties": {"t": {"type": "array", "items": NUMBER, "minItems": 4},
                        "values": {"type": "array", "items": NUMBER, "minItems": 4}}},
    ]
}

VECTOR3 = {"type": "array", "items": NUMBER, "minItems": 3, "maxItems": 3}

RULED = {
    "type": "object",
    "required": ["x", "y", "kappa_delta", "delta0", "delta1", "eps", "M"],
    "properties": {
        "x": SCALAR_FUNCTION, "y": SCALAR_FUNCTION, "kappa_delta": SCALAR_FUNCTION,
        "z": SCALAR_FUNCTION,
        "delta0": VECTOR3, "delta1": VECTOR3,
        "eps": {"type": "number", "exclusiveMinimum": 0},
        "M": {"type": "number", "exclusiveMinimum": 0},
        "I": {"type": "array", "items": NUMBER, "minItems": 2, "maxItems": 2},
    },
}


def _location(err):
    path = "$"
    for p in err.absolute_path:
        path += f"[{p}]" if isinstance(p, int) else f".{p}"
    return path


def validate(obj, schema):
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as err:
        raise SchemaError(err.message, _location(err)) from None
    return obj


def load_json(path, schema):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as err:
        raise SchemaError(f"malformed JSON ({err.msg})", f"$ line {err.lineno}") from None
    return validate(obj, schema)


def _jet(obj, location):
    try:
        return _Jet.from_dict(obj)
    except ValueError as err:
        raise SchemaError(str(err), location) from None


def parse_germ(obj, order=None):
    """Surface germ and optional boundary from ``{"f": [...], "b": [...], "order": N}``."""
    f = [_jet(c, f"$.f[{i}]") for i, c in enumerate(obj["f"])]
    if not all(isinstance(c, Jet2) for c in f):
        raise SchemaError("surface components must be two-variable jets", "$.f")
    order = order or obj.get("order")
    if order:
        f = [c.pad(order).truncate(order) for c in f]
    b = None
    if obj.get("b") is not None:
        b = tuple(_jet(c, f"$.b[{i}]") for i, c in enumerate(obj["b"]))
        if not all(isinstance(c, Jet1) for c in b):
            raise SchemaError("boundary components must be one-variable jets", "$.b")
        if order:
            b = tuple(c.pad(order).truncate(order) for c in b)
    return SurfaceGerm(f), b


def parse_curve(obj, order=None):
    comps = obj.get("gamma") or obj.get("components")
    jets = [_jet(c, f"$.gamma[{i}]") for i, c in enumerate(comps)]
    if not all(isinstance(c, Jet1) for c in jets):
        raise SchemaError("curve components must be one-variable jets", "$.gamma")
    if order:
        jets = [c.pad(order).truncate(order) for c in jets]
    return CurveGerm(jets)


def germ_to_dict(f, b=None):
    out = {"f": f.to_dict()}
    if b is not None:
        out["b"] = [c.to_dict() for c in b]
    return out


def dumps(obj):
    """JSON text; floats use the shortest repr that round-trips."""
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def write_text(text, path=None, stream=None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    elif stream is not None:
        stream.write(text)


def format_float(x):
    return "%.17g" % x


def write_csv(rows, header, path=None, stream=None):
    """Rows of numbers or strings; floats with 17 significant digits."""
    def cell(v):
        if isinstance(v, float):
            return format_float(v)
        return v
    fh = open(path, "w", newline="") if path else stream
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([cell(v) for v in r])
    finally:
        if path:
            fh.close()
