"""JSON schemas for object import, checked with jsonschema."""

from __future__ import annotations

from typing import Mapping

import jsonschema

from . import torus_algebra as alg
from .bordered_structures import TypeAModule, TypeDStructure
from .coeff_algebra import RINGS, FreeComplex


class SchemaError(ValueError):
    pass


_ID = {"type": "string", "minLength": 1}
_NAT = {"type": "integer", "minimum": 0}
_GENS = {"type": "array", "items": {
    "type": "object", "required": ["id", "idem"], "additionalProperties": False,
    "properties": {"id": _ID, "idem": {"enum": list(alg.IDEMPOTENTS)}}}}

COMPLEX_SCHEMA = {
    "type": "object",
    "required": ["format", "ring", "generators", "differential"],
    "properties": {
        "format": {"const": 1},
        "ring": {"enum": list(RINGS)},
        "graded": {"type": "boolean"},
        "generators": {"type": "array", "items": {
            "type": "object", "required": ["id"], "additionalProperties": False,
            "properties": {"id": _ID, "gr_u": {"type": "integer"}, "gr_v": {"type": "integer"}}}},
        "differential": {"type": "array", "items": {
            "type": "object", "required": ["from", "to"], "additionalProperties": False,
            "properties": {"from": _ID, "to": _ID, "u_exp": _NAT, "v_exp": _NAT}}},
    },
}

TYPE_D_SCHEMA = {
    "type": "object",
    "required": ["generators", "delta"],
    "properties": {
        "format": {"const": 1},
        "generators": _GENS,
        "delta": {"type": "array", "items": {
            "type": "object", "required": ["from", "rho", "to"], "additionalProperties": False,
            "properties": {"from": _ID, "to": _ID, "rho": {"enum": list(alg.REEB)}}}},
    },
}

TYPE_A_SCHEMA = {
    "type": "object",
    "required": ["flavor", "generators", "ops"],
    "properties": {
        "format": {"const": 1},
        "flavor": {"enum": ["minus", "hat"]},
        "generators": _GENS,
        "ops": {"type": "array", "items": {
            "type": "object", "required": ["gen", "rhos", "out"], "additionalProperties": False,
            "properties": {
                "gen": _ID,
                "rhos": {"type": "array", "items": {"enum": list(alg.REEB)}},
                "out": {"type": "array", "items": {
                    "type": "object", "required": ["gen"], "additionalProperties": False,
                    "properties": {"gen": _ID, "u_exp": _NAT}}}}}},
        "complete": {"type": "array", "items": _ID},
        "truncation": {"type": ["integer", "null"]},
    },
}


def _check(data, schema):
    errors = sorted(jsonschema.Draft202012Validator(schema).iter_errors(data), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        path = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in e.path)
        raise SchemaError(f"{path}: {e.message}")


def detect_kind(data: Mapping) -> str:
    if not isinstance(data, Mapping):
        raise SchemaError("$: top level must be an object")
    if "delta" in data:
        return "type-d"
    if "ops" in data:
        return "type-a"
    if "differential" in data:
        return "complex"
    raise SchemaError("$: cannot tell the object kind (expected 'delta', 'ops' or 'differential')")


def load_object(data: Mapping):
    kind = detect_kind(data)
    schema, cls = {"type-d": (TYPE_D_SCHEMA, TypeDStructure), "type-a": (TYPE_A_SCHEMA, TypeAModule),
                   "complex": (COMPLEX_SCHEMA, FreeComplex)}[kind]
    _check(data, schema)
    try:
        return cls.from_dict(data)
    except (ValueError, KeyError) as exc:
        raise SchemaError(f"$: {exc}") from None
