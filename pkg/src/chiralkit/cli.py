"""Command-line front end.

Reads a JSON payload (stdin or ``--input``), runs one command and writes a
JSON result to stdout with sorted keys and floats at 17 significant digits.
Exit status: 0 on success, 2 on invalid input, 3 when the computation itself
fails (numerical breakdown, unclassifiable element, ...).

Commands: classify, decompose, compose, oracle, cone-demo, symmetries.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import jsonschema
import numpy as np

from . import _scalar, affine, galilean, objects, orthogonal, poincare
from .affine import AffineIsometry
from .classify import DIRECT, square_closure
from .errors import ChiralkitError, NumericalBreakdown, ValidationError
from .galilean import GalileanIsometry
from .orthogonal import OrthogonalMap
from .quadspace import DEFAULT_TOL, QuadraticSpace, reflection

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3

# ---------------------------------------------------------------- schemas

_scalar_schema = {"oneOf": [{"type": "number"},
                            {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
_vector = {"type": "array", "items": _scalar_schema, "minItems": 1}
_matrix = {"type": "array", "items": _vector, "minItems": 1}

ELEMENT_SCHEMA = {
    "type": "object",
    "oneOf": [
        {"required": ["matrix"], "not": {"required": ["sigma"]}},
        {"required": ["homogeneous"]},
        {"required": ["generator"]},
        {"required": ["sigma"]},
    ],
    "properties": {
        "matrix": _matrix,
        "translation": _vector,
        "homogeneous": _matrix,
        "generator": {"enum": ["I", "P", "T", "PT", "boost", "rotation", "translation"]},
        "axis": {"enum": ["x", "y", "z"]},
        "rapidity": {"type": "number"},
        "beta": _scalar_schema,
        "angle": {"type": "number"},
        "cos_sin": {"type": "array", "items": _scalar_schema, "minItems": 2, "maxItems": 2},
        "sigma": {"enum": [1, -1]},
        "omega": {"type": "array", "items": {**_vector, "minItems": 3, "maxItems": 3},
                  "minItems": 3, "maxItems": 3},
        "v": {**_vector, "minItems": 3, "maxItems": 3},
        "s": _scalar_schema,
        "z": {**_vector, "minItems": 3, "maxItems": 3},
    },
}

INPUT_SCHEMAS = {
    "classify": {"type": "object"},
    "decompose": {"type": "object", "required": ["matrix"], "properties": {"matrix": _matrix}},
    "compose": {
        "type": "object",
        "oneOf": [{"required": ["elements"]}, {"required": ["supports"]}],
        "properties": {"elements": {"type": "array", "items": ELEMENT_SCHEMA, "minItems": 1},
                       "supports": {"type": "array", "items": _vector}},
    },
    "oracle": {
        "type": "object", "required": ["elements"],
        "properties": {"elements": {"type": "array", "items": ELEMENT_SCHEMA, "minItems": 1},
                       "names": {"type": "array", "items": {"type": "string"}}},
    },
    "cone-demo": {
        "type": "object",
        "properties": {"axis": {**_vector, "minItems": 3, "maxItems": 3},
                       "base_point": {**_vector, "minItems": 3, "maxItems": 3},
                       "speed": {"type": "number"}, "spin": {"type": "number"},
                       "half_angle": {"type": "number"}, "height": {"type": "number"}},
        "additionalProperties": False,
    },
    "symmetries": {
        "type": "object", "required": ["points"],
        "properties": {"points": _matrix, "labels": {"type": "array"},
                       "max_points": {"type": "integer", "minimum": 1}},
    },
}

_out_scalar = {"oneOf": [{"type": "number"}, {"type": "string"}]}
_out_vector = {"type": "array", "items": _out_scalar}
_out_matrix = {"type": "array", "items": _out_vector}
_classification = {"enum": ["direct", "indirect"]}
OUT_ELEMENT = {
    "type": "object",
    "oneOf": [
        {"required": ["matrix"], "additionalProperties": False,
         "properties": {"matrix": _out_matrix, "translation": _out_vector}},
        {"required": ["sigma", "omega", "v", "s", "z"], "additionalProperties": False,
         "properties": {"sigma": {"enum": [1, -1]}, "omega": _out_matrix, "v": _out_vector,
                        "s": _out_scalar, "z": _out_vector}},
    ],
}
OUTPUT_SCHEMAS = {
    "classify": {
        "type": "object", "required": ["classification"],
        "properties": {"classification": _classification,
                       "parity_pair": {"type": "array", "items": {"enum": [0, 1]}},
                       "witness": {"type": "array", "items": OUT_ELEMENT}},
    },
    "decompose": {
        "type": "object", "required": ["supports", "signs", "parity_pair", "count"],
        "properties": {"supports": {"type": "array", "items": _out_vector},
                       "signs": {"type": "array", "items": {"enum": ["positive", "negative"]}},
                       "parity_pair": {"type": "array"}, "count": {"type": "integer"},
                       "classification": _classification,
                       "reconstruction_error": _out_scalar},
    },
    "compose": {
        "type": "object", "required": ["product", "classification"],
        "properties": {"product": OUT_ELEMENT, "classification": _classification},
    },
    "oracle": {
        "type": "object", "required": ["closure", "classifications"],
        "properties": {"closure": {"type": "array", "items": {"type": "string"}},
                       "classifications": {"type": "object",
                                           "additionalProperties": _classification}},
    },
    "cone-demo": {
        "type": "object", "required": ["verdict", "candidates_checked"],
        "properties": {"verdict": {"enum": [k.value for k in objects.VerdictKind]},
                       "witness": {"oneOf": [OUT_ELEMENT, {"type": "null"}]},
                       "witness_classification": {"oneOf": [_classification, {"type": "null"}]}},
    },
    "symmetries": {
        "type": "object", "required": ["symmetries", "count"],
        "properties": {"symmetries": {"type": "array", "items": {
            "type": "object", "required": ["element", "classification"],
            "properties": {"element": OUT_ELEMENT, "classification": _classification}}}},
    },
}
ERROR_SCHEMA = {"type": "object", "required": ["code", "message"]}


# ---------------------------------------------------------------- serialization

def _encode(x):
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(x[k])}" for k in sorted(x)) + "}"
    if isinstance(x, np.ndarray):
        return _encode(x.tolist())
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in x) + "]"
    if x is None:
        return "null"
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        return json.dumps(str(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            raise NumericalBreakdown(f"non-finite value {x} in output")
        return format(x + 0.0, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, floats with 17 significant digits."""
    return _encode(obj)


def element_to_json(g):
    if isinstance(g, GalileanIsometry):
        return {"sigma": g.sigma, "omega": g.omega, "v": g.v, "s": g.s, "z": g.z}
    if isinstance(g, AffineIsometry):
        return {"matrix": g.linear.matrix, "translation": g.translation}
    if isinstance(g, OrthogonalMap):
        return {"matrix": g.matrix}
    raise TypeError(type(g).__name__)


# ---------------------------------------------------------------- parsing

def _parse_space(signature, tol, exact):
    if signature is None:
        return None
    if signature == "galilean":
        return "galilean"
    try:
        p, q = (int(v) for v in signature.split(","))
    except ValueError:
        raise ValidationError(f"--signature expects 'p,q' or 'galilean', got {signature!r}")
    return QuadraticSpace.of(p, q, tolerance=tol, exact=exact)


def _need_space(space, what="this command"):
    if not isinstance(space, QuadraticSpace):
        raise ValidationError(f"{what} needs --signature p,q")
    return space


def parse_element(data, space, opts):
    """Turn a JSON element description into a library element."""
    jsonschema.validate(data, ELEMENT_SCHEMA)
    if "sigma" in data:
        if space not in (None, "galilean"):
            raise ValidationError("Galilean elements need --signature galilean")
        return GalileanIsometry(data["sigma"], data.get("omega"), data.get("v"), data.get("s", 0),
                                data.get("z"), exact=opts.exact, tolerance=opts.tol)
    if space == "galilean":
        raise ValidationError("only Galilean parameter records are valid with --signature galilean")
    if "generator" in data:
        space = _need_space(space, "generators")
        conv = f"{space.signature.p},{space.signature.q}"
        if conv not in poincare.CONVENTIONS:
            raise ValidationError("Poincare generators need signature 1,3 or 3,1")
        kw = {k: data[k] for k in ("axis", "rapidity", "beta", "angle", "cos_sin", "translation")
              if k in data}
        return poincare.generator(data["generator"], conv, exact=opts.exact, tolerance=opts.tol, **kw)
    space = _need_space(space)
    if "homogeneous" in data:
        return AffineIsometry.from_homogeneous(space, data["homogeneous"])
    if "translation" in data:
        return AffineIsometry(space, data["matrix"], data["translation"])
    return OrthogonalMap(space, data["matrix"])


def _classification_payload(g):
    if isinstance(g, GalileanIsometry):
        c = galilean.classify(g)
        out = {"classification": c.value}
        if c is DIRECT:
            out["witness"] = [element_to_json(w) for w in galilean.direct_witness(g)]
        return out
    if isinstance(g, AffineIsometry):
        pp = affine.parity_pair(g)
        c = affine.classify(g)
        out = {"classification": c.value, "parity_pair": list(pp.as_tuple())}
        if c is DIRECT:
            out["witness"] = [element_to_json(w) for w in affine.direct_witness(g)]
        return out
    pp = orthogonal.parity_pair(g)
    out = {"classification": pp.classification.value, "parity_pair": list(pp.as_tuple())}
    if pp.classification is DIRECT:
        out["witness"] = [element_to_json(w) for w in orthogonal.direct_witness(g)]
    return out


def _compose_any(a, b):
    if isinstance(a, GalileanIsometry):
        return galilean.compose(a, b)
    if isinstance(a, AffineIsometry) or isinstance(b, AffineIsometry):
        a = a if isinstance(a, AffineIsometry) else AffineIsometry(a.space, a)
        b = b if isinstance(b, AffineIsometry) else AffineIsometry(b.space, b)
        return affine.compose(a, b)
    return a @ b


def _classify_any(g):
    if isinstance(g, GalileanIsometry):
        return galilean.classify(g)
    if isinstance(g, AffineIsometry):
        return affine.classify(g)
    return orthogonal.classify(g)


def _equal_any(a, b, tol):
    if type(a) is not type(b) and not (isinstance(a, AffineIsometry) and isinstance(b, AffineIsometry)):
        return False
    return a.equals(b, tol)


# ---------------------------------------------------------------- commands

def cmd_classify(payload, space, opts):
    data = payload.get("element", payload)
    return _classification_payload(parse_element(data, space, opts))


def cmd_decompose(payload, space, opts):
    space = _need_space(space)
    m = OrthogonalMap(space, payload["matrix"])
    fac = orthogonal.decompose(m)
    pp = orthogonal.parity_pair(m)
    err = _scalar.max_abs(fac.reconstruct() - m.matrix)
    return {
        "supports": list(fac.supports),
        "signs": [s.value for s in fac.signs],
        "count": len(fac),
        "parity_pair": list(pp.as_tuple()),
        "classification": pp.classification.value,
        "reconstruction_error": err if space.exact else float(err),
    }


def cmd_compose(payload, space, opts):
    if "supports" in payload:
        space = _need_space(space)
        elements = [reflection(space, space.vector(u)) for u in payload["supports"]]
    else:
        elements = [parse_element(e, space, opts) for e in payload["elements"]]
    out = elements[0]
    for g in elements[1:]:
        out = _compose_any(out, g)
    return {"product": element_to_json(out), "classification": _classify_any(out).value}


def cmd_oracle(payload, space, opts):
    elements = [parse_element(e, space, opts) for e in payload["elements"]]
    if any(isinstance(e, AffineIsometry) for e in elements):
        elements = [e if isinstance(e, AffineIsometry) else AffineIsometry(e.space, e)
                    for e in elements]
    names = payload.get("names") or [f"g{i}" for i in range(len(elements))]
    if len(names) != len(elements):
        raise ValidationError("names and elements differ in length")
    tol = 0 if opts.exact else opts.tol
    closure = square_closure(elements, _compose_any, lambda a, b: _equal_any(a, b, tol))
    closure_ids = {id(c) for c in closure}
    return {
        "closure": [n for n, e in zip(names, elements) if id(e) in closure_ids],
        "classifications": {n: ("direct" if id(e) in closure_ids else "indirect")
                            for n, e in zip(names, elements)},
    }


def cmd_cone_demo(payload, space, opts):
    kw = {k: tuple(v) if isinstance(v, list) else v for k, v in payload.items()}
    obj = objects.spinning_cone(**kw)
    family = objects.CandidateFamily(resolution=opts.family_resolution,
                                     allow_boosts=opts.allow_boosts)
    v = objects.chirality_verdict(obj, family, tol=opts.tol, grid_seed=opts.seed)
    return {
        "verdict": v.kind.value,
        "witness": element_to_json(v.witness) if v.witness is not None else None,
        "witness_label": v.witness_label,
        "witness_classification": galilean.classify(v.witness).value if v.witness else None,
        "candidates_checked": v.candidates_checked,
        "allow_boosts": family.allow_boosts,
        "family_resolution": family.resolution,
    }


def cmd_symmetries(payload, space, opts):
    if space is None:
        raise ValidationError("symmetries needs --signature p,q or --signature galilean")
    pts = payload["points"]
    labels = payload.get("labels") or [0] * len(pts)
    S = objects.LabeledEventSet(_scalar.asarray(pts), labels)
    group = space if space == "galilean" else space.float_space()
    found = objects.point_set_symmetries(S, group, payload.get("max_points", 8), tol=opts.tol)
    return {
        "symmetries": [{"element": element_to_json(g),
                        "classification": objects.classify_isometry(g).value} for g in found],
        "count": len(found),
    }


COMMANDS = {
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "compose": cmd_compose,
    "oracle": cmd_oracle,
    "cone-demo": cmd_cone_demo,
    "symmetries": cmd_symmetries,
}


def _bool(text):
    v = text.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _default_tol():
    env = os.environ.get("CHIRALKIT_TOL")
    return float(env) if env else DEFAULT_TOL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--signature", help="'p,q' or 'galilean'")
    common.add_argument("--tol", type=float, default=None, help="float tolerance (default 1e-9)")
    common.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--family-resolution", type=int, default=8)
    common.add_argument("--allow-boosts", type=_bool, default=False)
    common.add_argument("--input", default="-", help="payload file (default: stdin)")
    parser = _Parser(prog="chiralkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv=None, stdin=None, stdout=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    try:
        opts = build_parser().parse_args(argv)
        if opts.tol is None:
            opts.tol = _default_tol()
        if opts.tol < 0 or opts.family_resolution < 1:
            raise ValidationError("--tol must be >= 0 and --family-resolution >= 1")
        if opts.input == "-":
            text = stdin.read()
        else:
            with open(opts.input) as fh:
                text = fh.read()
        payload = json.loads(text) if text.strip() else {}
        jsonschema.validate(payload, INPUT_SCHEMAS[opts.command])
        space = _parse_space(opts.signature, opts.tol, opts.exact)
        result = COMMANDS[opts.command](payload, space, opts)
    except json.JSONDecodeError as exc:
        return _fail(stdout, EXIT_INVALID, "invalid_json", str(exc))
    except jsonschema.ValidationError as exc:
        return _fail(stdout, EXIT_INVALID, "schema_violation", exc.message)
    except (ValidationError, OSError) as exc:
        return _fail(stdout, EXIT_INVALID, getattr(exc, "code", "validation_error"), str(exc))
    except ChiralkitError as exc:
        extra = {}
        if isinstance(exc, NumericalBreakdown) and exc.tolerance is not None:
            extra["tolerance"] = exc.tolerance
        return _fail(stdout, EXIT_FAILED, exc.code, str(exc), **extra)
    stdout.write(dumps(result) + "\n")
    return EXIT_OK


def _fail(stdout, status, code, message, **extra):
    stdout.write(dumps({"code": code, "message": message, **extra}) + "\n")
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
