"""JSON encoding of exact objects.

Scalars are strings ``"p/q"`` (or ``"p"``); polynomials are term lists in
canonical monomial order; node sets are ``{"nodes": [[x, y], ...]}``; lines
are ``[a0, a1, a2]``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .arith import LinearForm, Poly
from .berzolari_radon import BRStep
from .hbasis import HBasis
from .lattices import GPLSpec, NaturalLatticeSpec
from .nodes import LagrangeBasis, NodeSet
from .syzygy import SyzygyMatrix


class MalformedInputError(ValueError):
    """Input document does not have the expected shape (CLI exit code 2)."""


# ---------------------------------------------------------------------------
# decoding


def scalar_from_json(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise MalformedInputError(f"scalar {v!r} must be an integer or a 'p/q' string")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedInputError(f"cannot parse scalar {v!r}") from None
    raise MalformedInputError(f"scalar {v!r} has type {type(v).__name__}")


def point_from_json(v) -> tuple:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise MalformedInputError(f"point {v!r} must be a pair")
    return (scalar_from_json(v[0]), scalar_from_json(v[1]))


def nodes_from_json(doc) -> NodeSet:
    if isinstance(doc, dict):
        if "nodes" not in doc:
            raise MalformedInputError("node document needs a 'nodes' key")
        doc = doc["nodes"]
    if not isinstance(doc, list):
        raise MalformedInputError("nodes must be a list of pairs")
    return NodeSet(point_from_json(p) for p in doc)


def line_from_json(v) -> LinearForm:
    if not isinstance(v, (list, tuple)) or len(v) != 3:
        raise MalformedInputError(f"line {v!r} must be [a0, a1, a2]")
    return LinearForm(*(scalar_from_json(c) for c in v))


def poly_from_json(doc) -> Poly:
    if isinstance(doc, dict) and "terms" in doc:
        doc = doc["terms"]
    if not isinstance(doc, list):
        raise MalformedInputError("polynomial must be a list of {e1, e2, coeff} terms")
    terms: dict = {}
    for t in doc:
        try:
            e1, e2, c = t["e1"], t["e2"], t["coeff"]
        except (TypeError, KeyError):
            raise MalformedInputError(f"bad term {t!r}") from None
        if not isinstance(e1, int) or not isinstance(e2, int) or e1 < 0 or e2 < 0:
            raise MalformedInputError(f"bad exponents in term {t!r}")
        terms[(e1, e2)] = terms.get((e1, e2), Fraction(0)) + scalar_from_json(c)
    return Poly(terms)


def hbasis_from_json(doc) -> HBasis:
    try:
        degree, elements = doc["degree"], doc["elements"]
    except (TypeError, KeyError):
        raise MalformedInputError("H-basis document needs 'degree' and 'elements'") from None
    if not isinstance(degree, int):
        raise MalformedInputError("degree must be an integer")
    nodes = nodes_from_json(doc["nodes"]) if "nodes" in doc else None
    return HBasis(degree, tuple(poly_from_json(p) for p in elements), "given", nodes)


def steps_from_json(doc) -> list[BRStep]:
    if isinstance(doc, dict):
        doc = doc.get("steps")
    if not isinstance(doc, list):
        raise MalformedInputError("chain document needs a 'steps' list")
    out = []
    for s in doc:
        if not isinstance(s, dict) or "line" not in s or "points" not in s:
            raise MalformedInputError("each step needs 'line' and 'points'")
        m = line_from_json(s["m"]) if "m" in s else None
        out.append(BRStep(line_from_json(s["line"]), NodeSet(point_from_json(p) for p in s["points"]), m))
    return out


def natural_spec_from_json(doc, extension=None) -> NaturalLatticeSpec:
    if isinstance(doc, dict):
        extension = doc.get("extension", extension)
        doc = doc.get("lines")
    if not isinstance(doc, list):
        raise MalformedInputError("natural lattice document needs a 'lines' list")
    ext = line_from_json(extension) if extension is not None and not isinstance(extension, LinearForm) else extension
    return NaturalLatticeSpec(tuple(line_from_json(k) for k in doc), ext)


def gpl_spec_from_json(doc) -> GPLSpec:
    if isinstance(doc, dict):
        doc = doc.get("pencils")
    if not isinstance(doc, list) or len(doc) != 3:
        raise MalformedInputError("GPL document needs three pencils")
    return GPLSpec(tuple(tuple(line_from_json(k) for k in p) for p in doc))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"invalid JSON: {e}") from None


# ---------------------------------------------------------------------------
# encoding


def scalar_to_json(c: Fraction) -> str:
    return str(c)


def poly_to_json(p: Poly) -> list:
    return [{"e1": e1, "e2": e2, "coeff": str(c)} for (e1, e2), c in p.items()]


def to_json(obj: Any, pretty: bool = False):
    """Recursively convert to plain JSON data; ``pretty`` prints polynomials as text."""
    if isinstance(obj, Poly):
        return str(obj) if pretty else poly_to_json(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, LinearForm):
        return f"{obj} = 0" if pretty else obj.as_strings()
    if isinstance(obj, NodeSet):
        return [[str(c) for c in y] for y in obj]
    if isinstance(obj, SyzygyMatrix):
        if pretty:
            return obj.pretty().splitlines()
        return [[to_json(p) for p in r] for r in obj.rows]
    if isinstance(obj, HBasis):
        return {"degree": obj.degree, "origin": obj.origin, "elements": [to_json(p, pretty) for p in obj.elements]}
    if isinstance(obj, LagrangeBasis):
        return [{"node": to_json(y), "poly": to_json(p, pretty)} for y, p in obj.items()]
    if isinstance(obj, dict):
        return {str(k): to_json(v, pretty) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        if len(obj) == 2 and all(isinstance(c, Fraction) for c in obj):
            return [str(c) for c in obj]
        return [to_json(v, pretty) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any, pretty: bool = False) -> str:
    return json.dumps(to_json(obj, pretty), indent=2, ensure_ascii=False) + "\n"
