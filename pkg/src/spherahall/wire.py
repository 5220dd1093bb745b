"""JSON wire forms for objects, Hall elements and polynomials.

Objects:   {"d": 3, "summands": [{"shift": 0, "len": 1}, ...]}
           ("branch": 1 | 2 is accepted on every summand and emitted for d = 0)
Elements:  {"q": 2, "terms": [{"coeff": "1/2", "obj": <object>}, ...]}

All emitters sort their output so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .arith import format_rational, parse_rational, rf_eval_at_q
from .category import IndecLabel, ObjClass, make_object
from .hall import HallElement
from .ncpoly import NCPolynomial


class DescriptorError(ValueError):
    pass


def object_to_json(x: ObjClass) -> dict[str, Any]:
    summands = []
    for lab in x.summands:
        rec = {"shift": lab.shift, "len": lab.len}
        if x.d == 0:
            rec["branch"] = lab.branch
        summands.append(rec)
    return {"d": x.d, "summands": summands}


def object_from_json(data: Any) -> ObjClass:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"object descriptor is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("d"), int):
        raise DescriptorError("object descriptor needs an integer field 'd'")
    labels = []
    for rec in data.get("summands", []):
        if not isinstance(rec, dict) or not isinstance(rec.get("shift"), int):
            raise DescriptorError(f"bad summand record {rec!r}")
        n, b = rec.get("len", 1), rec.get("branch", 1)
        if not isinstance(n, int) or not isinstance(b, int):
            raise DescriptorError(f"bad summand record {rec!r}")
        labels.append(IndecLabel(rec["shift"], n, b))
    return make_object(data["d"], labels)


def element_to_json(e: HallElement) -> dict[str, Any]:
    return {"q": e.q, "terms": [{"coeff": format_rational(c), "obj": object_to_json(x)}
                                for x, c in e.items()]}


def element_from_json(data: Any) -> HallElement:
    if isinstance(data, str):
        data = json.loads(data)
    terms = {}
    objs = [object_from_json(t["obj"]) for t in data["terms"]]
    if not objs:
        raise DescriptorError("an element without terms has no d; use a zero coefficient on [0]")
    for t, x in zip(data["terms"], objs):
        terms[x] = terms.get(x, Fraction(0)) + parse_rational(t["coeff"])
    return HallElement(objs[0].sphere, data["q"], terms)


def polynomial_to_json(w: NCPolynomial, q: int) -> dict[str, Any]:
    return {"q": q, "terms": [{"coeff": format_rational(rf_eval_at_q(c, q)),
                               "word": [str(g) for g in word]} for word, c in w.terms]}


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))
