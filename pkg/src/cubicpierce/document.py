"""JSON wire format for configurations.

A document looks like::

    {"version": 1, "field": "rational", "representation": "planar",
     "sets": {"P": [["0/1", "0/1", "1/1"], ...], "R": [...]}}

Representations:

* ``planar``: projective points as three coordinate strings.  Rationals are
  ``"num/den"``; prime-field residues are decimal strings.
* ``angle``: circle points and chord classes as ``{"q": "num/den", "c": int}``
  (``c`` is the coefficient of the generic rotation).  ``R`` lists chord
  direction classes.
* ``ec``: curve points ``{"x": ..., "y": ...}`` or ``"O"``; ``curve`` gives
  the Weierstrass coefficients.
* ``group``: residue lists in ``Z_{n1} x ... x Z_{nr}``; ``group.orders``
  names the group.  ``R`` holds the elements ``z`` with ``x + y + z = 0``.

Documents are validated against :data:`SCHEMA` and then parsed; role
disjointness is re-checked while parsing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import jsonschema

from .abelian import CIRCLE, FinAbGroup, GroupSet, fraction_str
from .constructions import AngleConfig
from .cubic import WeierstrassCurve
from .errors import UsageError
from .fields import QQ, Fp, parse_field
from .plane import PointConfig, ProjPoint

VERSION = 1
REPRESENTATIONS = ("planar", "angle", "ec", "group")
ROLE_ORDER = ("P", "B", "G", "R")

_scalar = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_angle = {
    "type": "object",
    "properties": {"q": _scalar, "c": {"type": "integer"}},
    "required": ["q", "c"],
    "additionalProperties": False,
}
_ecpoint = {
    "oneOf": [
        {"const": "O"},
        {
            "type": "object",
            "properties": {"x": _scalar, "y": _scalar},
            "required": ["x", "y"],
            "additionalProperties": False,
        },
    ]
}
_planar = {"type": "array", "items": _scalar, "minItems": 3, "maxItems": 3}
_residues = {"type": "array", "items": {"type": "integer"}, "minItems": 1}


def _sets_schema(item: dict) -> dict:
    return {
        "type": "object",
        "propertyNames": {"enum": list(ROLE_ORDER)},
        "additionalProperties": {"type": "array", "items": item},
    }


SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "version": {"const": VERSION},
        "field": {"type": "string", "pattern": r"^(rational|fp:[0-9]+)$"},
        "representation": {"enum": list(REPRESENTATIONS)},
        "curve": {
            "type": "object",
            "properties": {"kind": {"const": "weierstrass"}, "a": _scalar, "b": _scalar},
            "required": ["kind", "a", "b"],
            "additionalProperties": False,
        },
        "group": {
            "type": "object",
            "properties": {"orders": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1}},
            "required": ["orders"],
            "additionalProperties": False,
        },
        "sets": {"type": "object"},
    },
    "required": ["version", "field", "representation", "sets"],
    "additionalProperties": False,
    "allOf": [
        {
            "if": {"properties": {"representation": {"const": rep}}},
            "then": {"properties": {"sets": _sets_schema(item)}},
        }
        for rep, item in (("planar", _planar), ("angle", _angle), ("ec", _ecpoint), ("group", _residues))
    ]
    + [
        {"if": {"properties": {"representation": {"const": "ec"}}}, "then": {"required": ["curve"]}},
        {"if": {"properties": {"representation": {"const": "group"}}}, "then": {"required": ["group"]}},
    ],
}


class SchemaError(UsageError):
    """The document is not valid JSON or does not match the schema."""


def encode_scalar(v) -> str:
    if isinstance(v, Fp):
        return str(int(v))
    return fraction_str(Fraction(v))


def _role_items(roles: dict) -> list:
    return [(k, roles[k]) for k in ROLE_ORDER if k in roles]


@dataclass
class ConfigDocument:
    field: str
    representation: str
    sets: dict[str, list]
    curve: dict | None = None
    group: dict | None = None
    version: int = VERSION

    # -- serialization -------------------------------------------------------

    def to_obj(self) -> dict:
        obj: dict[str, Any] = {
            "version": self.version,
            "field": self.field,
            "representation": self.representation,
            "sets": {k: v for k, v in _role_items(self.sets)},
        }
        if self.curve is not None:
            obj["curve"] = self.curve
        if self.group is not None:
            obj["group"] = self.group
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_obj(cls, obj) -> "ConfigDocument":
        try:
            jsonschema.validate(obj, SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise SchemaError(f"schema violation at {where}: {exc.message}") from None
        doc = cls(
            field=obj["field"],
            representation=obj["representation"],
            sets=obj["sets"],
            curve=obj.get("curve"),
            group=obj.get("group"),
            version=obj["version"],
        )
        doc.parse()  # element-level validation
        return doc

    @classmethod
    def from_json(cls, text: str) -> "ConfigDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not JSON: {exc}") from None
        return cls.from_obj(obj)

    @classmethod
    def load(cls, path) -> "ConfigDocument":
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.from_json(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    # -- typed views ---------------------------------------------------------

    @property
    def fld(self):
        return parse_field(self.field)

    def parse(self):
        """The typed configuration: PointConfig, AngleConfig, or ``(group, {role: GroupSet})``."""
        rep = self.representation
        if rep == "planar":
            F = self.fld
            roles = {k: [ProjPoint(*(F(Fraction(c)) for c in p), field=F) for p in v] for k, v in self.sets.items()}
            return PointConfig(F, roles)
        if rep == "angle":
            if self.field != "rational":
                raise UsageError("angle documents use the rational field")
            roles = {k: [CIRCLE.decode(x) for x in v] for k, v in self.sets.items()}
            for k, v in roles.items():
                if len(set(v)) != len(v):
                    raise UsageError(f"role {k} repeats an element")
            R = roles.pop("R", [])
            return AngleConfig(roles, R)
        if rep == "ec":
            E = self.curve_obj()
            roles = {k: [E.decode(x) for x in v] for k, v in self.sets.items()}
            _check_disjoint(roles, include_r=True)
            return E, {k: GroupSet(E, v) for k, v in roles.items()}
        g = FinAbGroup(self.group["orders"])
        roles = {}
        for k, v in self.sets.items():
            elems = [g.element(list(x)) if len(x) == len(g.orders) else _bad(x, g) for x in v]
            roles[k] = [tuple(e) for e in elems]
        _check_disjoint(roles, include_r=False)
        return g, {k: GroupSet(g, v) for k, v in roles.items()}

    def curve_obj(self) -> WeierstrassCurve:
        if self.curve is None:
            raise UsageError("document has no curve")
        F = self.fld
        return WeierstrassCurve(Fraction(self.curve["a"]), Fraction(self.curve["b"]), F)

    def canonical(self) -> "ConfigDocument":
        """Re-encode from the parsed form, with every role sorted."""
        parsed = self.parse()
        rep = self.representation
        if rep == "planar":
            return from_point_config(parsed)
        if rep == "angle":
            return from_angle_config(parsed)
        group, roles = parsed
        if rep == "ec":
            return from_ec(group, roles)
        return from_group(group, roles)


def _bad(x, g):
    raise UsageError(f"{x!r} is not an element of {g.name}")


def _check_disjoint(roles: dict, include_r: bool):
    seen: dict = {}
    for k, v in roles.items():
        if len(set(v)) != len(v):
            raise UsageError(f"role {k} repeats an element")
        if k == "R" and not include_r:
            continue
        for x in v:
            if x in seen:
                raise UsageError(f"element {x!r} appears in roles {seen[x]} and {k}")
            seen[x] = k


def _point_key(p: ProjPoint):
    return tuple(int(c) if isinstance(c, Fp) else c for c in p.coords)


def from_point_config(cfg: PointConfig) -> ConfigDocument:
    sets = {
        k: [[encode_scalar(c) for c in p.coords] for p in sorted(v, key=_point_key)]
        for k, v in _role_items(cfg.roles)
    }
    return ConfigDocument(cfg.field.name, "planar", sets)


def from_angle_config(cfg: AngleConfig) -> ConfigDocument:
    sets = {k: [CIRCLE.encode(x) for x in sorted(v, key=CIRCLE.sort_key)] for k, v in _role_items(cfg.roles)}
    sets["R"] = [CIRCLE.encode(x) for x in sorted(cfg.R, key=CIRCLE.sort_key)]
    return ConfigDocument(QQ.name, "angle", sets)


def from_ec(curve: WeierstrassCurve, roles: dict) -> ConfigDocument:
    sets = {k: [curve.encode(x) for x in GroupSet(curve, v)] for k, v in _role_items(roles)}
    cv = {"kind": "weierstrass", "a": encode_scalar(curve.a), "b": encode_scalar(curve.b)}
    return ConfigDocument(curve.field.name, "ec", sets, curve=cv)


def from_group(group: FinAbGroup, roles: dict) -> ConfigDocument:
    sets = {k: [group.encode(x) for x in GroupSet(group, v)] for k, v in _role_items(roles)}
    return ConfigDocument(QQ.name, "group", sets, group={"orders": list(group.orders)})
