"""JSON schemas for media, metrics, polynomials and Tamm-Rubilar tensors.

Medium documents: {"format": "kappa6"|"blocks"|"components",
"scalar": "rational"|"float"|"complex", "payload": ...} with rationals as
"p/q" strings, floats as JSON numbers and complex scalars as [re, im]
pairs.  Serialisation is canonical (sorted keys, fixed indentation), so
parse -> serialise round-trips bundled fixture files byte-identically.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import PremetricError
from .fresnel import MULTI4, TammRubilar
from .metric_hodge import Metric4
from .polyalg import MultiPoly
from .scalars import GaussianRational
from .tensor_core import AREA_BASIS, ABCDBlocks, AreaOperator, kappa_from_blocks


class SchemaError(PremetricError):
    code = "schema_error"


def _scalar_kind(values) -> str:
    kinds = set()
    for v in values:
        if isinstance(v, (Fraction, int)):
            kinds.add("rational")
        elif isinstance(v, GaussianRational):
            kinds.add("complex_exact")
        elif isinstance(v, complex):
            kinds.add("complex_float")
        else:
            kinds.add("float")
    if "complex_exact" in kinds:
        return "complex" if kinds <= {"complex_exact", "rational"} else "float"
    if "complex_float" in kinds:
        return "complex"
    if kinds == {"rational"}:
        return "rational"
    return "float"


def _encode_scalar(v, kind: str):
    if kind == "rational":
        return str(Fraction(v))
    if kind == "complex":
        if isinstance(v, GaussianRational):
            return [str(v.re), str(v.im)]
        if isinstance(v, complex):
            return [v.real, v.imag]
        if isinstance(v, (int, Fraction)):
            return [str(Fraction(v)), "0"]
        return [float(v), 0.0]
    return float(v)


def _decode_scalar(v, kind: str):
    if kind == "rational":
        return Fraction(v)
    if kind == "complex":
        re, im = v
        if isinstance(re, str):
            return GaussianRational(Fraction(re), Fraction(im))
        return complex(re, im)
    return float(v)


def medium_to_json(kappa: AreaOperator, fmt: str = "kappa6") -> dict:
    values = [x for row in kappa.mat for x in row]
    kind = _scalar_kind(values)
    if fmt == "kappa6":
        payload = [[_encode_scalar(x, kind) for x in row] for row in kappa.mat]
    elif fmt == "blocks":
        b = kappa.blocks()
        payload = {name: [[_encode_scalar(x, kind) for x in row] for row in m]
                   for name, m in (("A", b.A), ("B", b.B), ("C", b.C), ("D", b.D))}
    elif fmt == "components":
        payload = []
        for I in range(6):
            for J in range(6):
                v = kappa.mat[I][J]
                if v:
                    (i, j) = AREA_BASIS[J]
                    (k, l) = AREA_BASIS[I]
                    payload.append([i, j, k, l, _encode_scalar(v, kind)])
    else:
        raise SchemaError(f"unknown medium format {fmt!r}")
    return {"format": fmt, "scalar": kind, "payload": payload}


def medium_from_json(doc: dict) -> AreaOperator:
    try:
        fmt = doc["format"]
        kind = doc["scalar"]
        payload = doc["payload"]
    except (KeyError, TypeError) as e:
        raise SchemaError(f"malformed medium document: {e}")
    if kind not in ("rational", "float", "complex"):
        raise SchemaError(f"unknown scalar kind {kind!r}")
    if fmt == "kappa6":
        rows = [[_decode_scalar(x, kind) for x in row] for row in payload]
        return AreaOperator.from_rows(rows)
    if fmt == "blocks":
        mats = {}
        for name in ("A", "B", "C", "D"):
            mats[name] = [[_decode_scalar(x, kind) for x in row] for row in payload[name]]
        return kappa_from_blocks(ABCDBlocks.make(**mats))
    if fmt == "components":
        from .tensor_core import kappa_from_components
        entries = [(int(i), int(j), int(k), int(l), _decode_scalar(v, kind))
                   for (i, j, k, l, v) in payload]
        return kappa_from_components(entries)
    raise SchemaError(f"unknown medium format {fmt!r}")


def metric_to_json(g: Metric4) -> dict:
    kind = "rational" if g.exact else "float"
    return {"g": [[_encode_scalar(x, kind) for x in row] for row in g.mat],
            "scalar": kind}


def metric_from_json(doc: dict) -> Metric4:
    kind = doc.get("scalar", "rational")
    rows = [[_decode_scalar(x, kind) for x in row] for row in doc["g"]]
    return Metric4.make(rows)


def parse_metric_spec(spec: str) -> Metric4:
    """CLI metric option: minkowski | euclidean | diag:a,b,c,d | <file.json>."""
    if spec == "minkowski":
        return Metric4.minkowski()
    if spec == "euclidean":
        return Metric4.euclidean()
    if spec.startswith("diag:"):
        entries = [Fraction(x) for x in spec[5:].split(",")]
        if len(entries) != 4:
            raise SchemaError("diag: metric needs four entries")
        return Metric4.diag(*entries)
    with open(spec) as fh:
        return metric_from_json(json.load(fh))


def tr_to_json(G: TammRubilar) -> dict:
    values = list(G.comps)
    kind = _scalar_kind(values)
    comps = {"".join(str(i) for i in m): _encode_scalar(c, kind)
             for m, c in zip(MULTI4, G.comps)}
    return {"scalar": kind, "components": comps}


def tr_from_json(doc: dict) -> TammRubilar:
    kind = doc["scalar"]
    comps = []
    for m in MULTI4:
        key = "".join(str(i) for i in m)
        comps.append(_decode_scalar(doc["components"][key], kind))
    return TammRubilar(tuple(comps))


def poly_to_json(p: MultiPoly) -> dict:
    terms = [[str(c), list(e)] for e, c in sorted(p.terms.items())]
    return {"vars": list(p.vars), "terms": terms}


def poly_from_json(doc: dict) -> MultiPoly:
    vars = tuple(doc["vars"])
    terms = {tuple(e): Fraction(c) for c, e in doc["terms"]}
    return MultiPoly(vars, terms)


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
