"""JSON schemas for every file format read by the command line."""

from __future__ import annotations

import jsonschema

from .errors import SchemaError

_INT = {"type": "integer"}
_POS = {"type": "integer", "minimum": 1}
_INT_VEC = {"type": "array", "items": _INT}
_EXPR = {"type": "string", "minLength": 1}

METACYCLIC = {
    "type": "object",
    "required": ["m", "k", "t", "r"],
    "properties": {"m": _POS, "k": _POS, "t": _POS, "r": _POS},
    "additionalProperties": False,
}

METABELIAN = {
    "type": "object",
    "required": ["sigma_orders", "tau_orders", "action_matrices", "k_vectors"],
    "properties": {
        "sigma_orders": {"type": "array", "items": _POS, "minItems": 1},
        "tau_orders": {"type": "array", "items": _POS, "minItems": 1},
        "action_matrices": {
            "type": "array",
            "items": {"type": "array", "items": _INT_VEC},
        },
        "k_vectors": {"type": "array", "items": _INT_VEC},
    },
    "additionalProperties": False,
}

_SCALAR = {
    "type": "object",
    "required": ["zeta_order", "exponent"],
    "properties": {"zeta_order": _POS, "exponent": _INT},
    "additionalProperties": False,
}

_PERMS = {
    "type": "array",
    "items": {
        "type": "array",
        "items": {"type": "array", "items": _INT_VEC, "minItems": 2, "maxItems": 2},
    },
}

METABELIAN_COVER = {
    "type": "object",
    "required": ["presentation"],
    "properties": {
        "presentation": METABELIAN,
        "divisor_permutations": _PERMS,
        "sheaf_permutations": _PERMS,
        "scalars": {"type": "array", "items": {"type": "array", "items": _SCALAR}},
    },
    "additionalProperties": False,
}

BUILDING_DATA = {
    "type": "object",
    "required": ["picard", "group", "labels", "L"],
    "properties": {
        "picard": {
            "type": "object",
            "required": ["rank"],
            "properties": {
                "rank": {"type": "integer", "minimum": 0},
                "torsion": {"type": "array", "items": _POS},
            },
            "additionalProperties": False,
        },
        "group": {
            "type": "object",
            "required": ["factors"],
            "properties": {"factors": {"type": "array", "items": _POS}},
            "additionalProperties": False,
        },
        "labels": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["class", "g"],
                "properties": {"class": _INT_VEC, "g": _INT_VEC, "name": {"type": "string"}},
                "additionalProperties": False,
            },
        },
        "L": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["chi", "class"],
                "properties": {"chi": _INT_VEC, "class": _INT_VEC},
                "additionalProperties": False,
            },
        },
        "K_W": _INT_VEC,
    },
    "additionalProperties": False,
}

KUMMER = {
    "type": "object",
    "required": ["elements", "n"],
    "properties": {
        "elements": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [{"type": "string"}, _INT],
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
        "n": {"type": "integer", "minimum": 2},
    },
    "additionalProperties": False,
}

TOWER = {
    "type": "object",
    "required": ["m", "k", "t", "r", "f", "g", "tau"],
    "properties": {
        "m": _POS,
        "k": _POS,
        "t": _POS,
        "r": _POS,
        "N": _POS,
        "f": _EXPR,
        "g": {"type": "array", "items": _EXPR, "minItems": 1},
        "tau": {
            "type": "object",
            "oneOf": [{"required": ["alpha"]}, {"required": ["P"]}],
            "properties": {
                "alpha": {"type": "array", "items": _EXPR, "minItems": 1},
                "P": {"type": "array", "items": _EXPR, "minItems": 1},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

SCHEMAS = {
    "metacyclic": METACYCLIC,
    "metabelian": METABELIAN,
    "metabelian_cover": METABELIAN_COVER,
    "building_data": BUILDING_DATA,
    "kummer": KUMMER,
    "tower": TOWER,
}


def validate(data, name: str) -> None:
    try:
        jsonschema.validate(data, SCHEMAS[name])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "(root)"
        raise SchemaError(f"{name} input invalid at {where}: {exc.message}") from None
