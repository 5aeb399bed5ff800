"""JSON documents for elements, certificates and check inputs.

Element document: ``{"level": n, "coeffs": {"index": "p/q", ...}}`` with
decimal index keys and exact rational strings; zero coefficients are omitted.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import ComplexScalar, Element, check_level, format_rational, to_rational
from .errors import InputError
from .linalg import OperatorMatrix, Subspace


def element_to_doc(x: Element) -> dict:
    return {"level": x.level, "coeffs": {str(i): format_rational(c) for i, c in x.sparse().items()}}


def serialize_element(x: Element) -> str:
    return json.dumps(element_to_doc(x))


def doc_to_element(doc: Any, where: str = "document") -> Element:
    """Element from a decoded document; errors name the offending position."""
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object with 'level' and 'coeffs'")
    extra = set(doc) - {"level", "coeffs"}
    if extra:
        raise InputError(f"{where}: unexpected key(s) {sorted(extra)}")
    level = doc.get("level")
    if isinstance(level, bool) or not isinstance(level, int):
        raise InputError(f"{where}.level: expected an integer, got {level!r}")
    try:
        level = check_level(level)
    except InputError as e:
        raise InputError(f"{where}.level: {e}") from None
    coeffs = doc.get("coeffs", {})
    if not isinstance(coeffs, dict):
        raise InputError(f"{where}.coeffs: expected an object")
    dim = 1 << level
    values = [Fraction(0)] * dim
    for key, val in coeffs.items():
        pos = f"{where}.coeffs[{key!r}]"
        if not (isinstance(key, str) and key.isdigit()):
            raise InputError(f"{pos}: index must be a non-negative decimal integer")
        idx = int(key)
        if idx >= dim:
            raise InputError(f"{pos}: index {idx} >= 2^{level} = {dim}")
        if isinstance(val, float):
            raise InputError(f"{pos}: floats are not accepted; write an exact rational string")
        try:
            values[idx] = to_rational(val)
        except (InputError, ValueError, TypeError, ZeroDivisionError) as e:
            raise InputError(f"{pos}: {e}") from None
    return Element(level, tuple(values))


def loads_json(text: str, where: str = "document") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{where}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def parse_element(text: str, where: str = "document") -> Element:
    return doc_to_element(loads_json(text, where), where)


def complex_to_doc(a: ComplexScalar) -> dict:
    return {"re": format_rational(a.re), "im": format_rational(a.im)}


def subspace_to_doc(u: Subspace) -> dict:
    return {"level": u.level, "dim": u.dim, "basis": [element_to_doc(v) for v in u.basis]}


def matrix_to_doc(m: OperatorMatrix) -> dict:
    return {"level": m.level, "rows": [[format_rational(c) for c in row] for row in m.entries]}


def to_jsonable(value: Any) -> Any:
    """Recursive conversion of library values into JSON-ready objects."""
    if isinstance(value, Element):
        return element_to_doc(value)
    if isinstance(value, ComplexScalar):
        return {"complex": [format_rational(value.re), format_rational(value.im)]}
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Subspace):
        return subspace_to_doc(value)
    if isinstance(value, OperatorMatrix):
        return matrix_to_doc(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def from_jsonable(value: Any, where: str = "inputs") -> Any:
    """Inverse of :func:`to_jsonable` for elements, complex scalars and rationals.

    Strings decode to rationals, so keep names out of values you round-trip.
    """
    if isinstance(value, dict):
        if "coeffs" in value and "level" in value:
            return doc_to_element(value, where)
        if set(value) == {"complex"}:
            re, im = value["complex"]
            return ComplexScalar(to_rational(re), to_rational(im))
        return {k: from_jsonable(v, f"{where}.{k}") for k, v in value.items()}
    if isinstance(value, list):
        return [from_jsonable(v, f"{where}[{i}]") for i, v in enumerate(value)]
    if isinstance(value, str):
        return to_rational(value)
    return value


def certificate_to_doc(cert, include_witness: bool = True) -> dict:
    doc = {
        "element": element_to_doc(cert.element),
        "claimed_ann_dim": cert.claimed_ann_dim,
        "provenance": to_jsonable(cert.provenance),
    }
    if include_witness and cert.witness_basis is not None:
        doc["witness_basis"] = [element_to_doc(v) for v in cert.witness_basis.basis]
    return doc


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2) + "\n"
