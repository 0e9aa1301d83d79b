"""The document format: exact JSON serialization of data and certificates.

Scalars are written as pairs of exact integer fractions, never decimals:
a Gaussian rational is ``[[re_num, re_den], [im_num, im_den]]``.  Serialized
documents are canonical (sorted keys, fixed separators, data in canonical
echelon form), so serialize/parse round trips are byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .datum import HodgeDatum, OrbitDatum, PairedDatum, Pairing, make_datum
from .filtration import Filtration
from .linalg import Matrix, Subspace
from .scalars import GaussScalar

FORMAT_DATUM = "hodge-datum/1"
FORMAT_CERTIFICATE = "hodge-certificate/1"


class ParseError(ValueError):
    """Malformed document text."""


class ValidationError(ValueError):
    """Well-formed text whose content violates a type invariant."""


def _scalar_out(x: GaussScalar):
    re, im = x.re, x.im
    return [[re.numerator, re.denominator], [im.numerator, im.denominator]]


def _scalar_in(obj) -> GaussScalar:
    try:
        (rn, rd), (im_n, im_d) = obj
        return GaussScalar(Fraction(rn, rd), Fraction(im_n, im_d))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {obj!r}: {exc}")


def _matrix_out(m: Matrix):
    return {"rows": m.rows, "cols": m.cols, "entries": [[_scalar_out(x) for x in row] for row in m.entries]}


def _matrix_in(obj) -> Matrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError("matrix must be an object with entries")
    entries = [[_scalar_in(x) for x in row] for row in obj["entries"]]
    m = Matrix(entries, obj.get("cols"))
    if m.rows != obj.get("rows", m.rows) or m.cols != obj.get("cols", m.cols):
        raise ParseError("matrix shape disagrees with its entries")
    return m


def _filtration_out(f: Filtration, key: str):
    return [{key: k, "basis": _matrix_out(s.basis)} for k, s in f.steps]


def _filtration_in(obj, ambient: int, increasing: bool, key: str) -> Filtration:
    pairs = []
    for step in obj:
        if key not in step:
            raise ParseError(f"filtration step missing index {key!r}")
        basis = _matrix_in(step["basis"])
        pairs.append((int(step[key]), Subspace.from_matrix_rows(basis)))
    try:
        return Filtration.make(ambient, increasing, pairs)
    except ValueError as exc:
        raise ValidationError(f"invalid filtration: {exc}")


def _pairing_out(p: Pairing, weight):
    return {"weight": weight, "matrix": _matrix_out(p.matrix), "twist": p.twist, "symmetry": p.symmetry}


def _pairing_in(obj) -> Pairing:
    try:
        return Pairing(_matrix_in(obj["matrix"]), int(obj["twist"]), int(obj["symmetry"]))
    except ValueError as exc:
        raise ValidationError(f"invalid pairing: {exc}")


def serialize(obj) -> str:
    """Canonical JSON text for a mixed datum, orbit datum, or paired datum."""
    if isinstance(obj, HodgeDatum):
        doc = _mixed_doc(obj)
    elif isinstance(obj, OrbitDatum):
        doc = _orbit_doc(obj)
    elif isinstance(obj, PairedDatum):
        doc = _mixed_doc(obj.datum)
        doc["weight"] = obj.weight
        doc["pairings"].append(_pairing_out(obj.pairing, "global"))
        doc["log_operator"] = _matrix_out(obj.log_operator)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _mixed_doc(h: HodgeDatum):
    return {
        "format_version": FORMAT_DATUM,
        "field": "Q(i)",
        "kind": "mixed",
        "dim": h.dim,
        "twist_tag": h.twist_tag,
        "weight_filtration": _filtration_out(h.weight_filtration, "k"),
        "hodge_filtration": _filtration_out(h.hodge_filtration, "p"),
        "operators": [_matrix_out(op) for op in h.operators],
        "pairings": [_pairing_out(p, w) for w, p in h.graded_pairings],
    }


def _orbit_doc(o: OrbitDatum):
    return {
        "format_version": FORMAT_DATUM,
        "field": "Q(i)",
        "kind": "orbit",
        "dim": o.dim,
        "twist_tag": o.twist_tag,
        "weight": o.weight,
        "hodge_filtration": _filtration_out(o.hodge_filtration, "p"),
        "operators": [_matrix_out(op) for op in o.operators],
        "pairings": [_pairing_out(o.pairing, "global")],
    }


def parse(text: str):
    """Parse a datum document; returns HodgeDatum, OrbitDatum or PairedDatum.

    Malformed syntax raises ParseError with a location; invariant violations
    raise ValidationError naming the invariant.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_DATUM:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    kind = doc.get("kind")
    if kind == "orbit":
        return _parse_orbit(doc)
    if kind == "mixed":
        return _parse_mixed(doc)
    raise ParseError(f"unknown kind {kind!r}")


def _parse_orbit(doc) -> OrbitDatum:
    dim = int(doc["dim"])
    ff = _filtration_in(doc["hodge_filtration"], dim, False, "p")
    ops = tuple(_matrix_in(m) for m in doc.get("operators", []))
    pairings = [p for p in doc.get("pairings", []) if p.get("weight") == "global"]
    if len(pairings) != 1:
        raise ValidationError("orbit documents need exactly one global pairing")
    pairing = _pairing_in(pairings[0])
    try:
        return OrbitDatum(int(doc["weight"]), pairing, ops, ff, int(doc.get("twist_tag", 0)))
    except ValueError as exc:
        raise ValidationError(str(exc))
    except KeyError as exc:
        raise ParseError(f"missing field {exc}")


def _parse_mixed(doc):
    dim = int(doc["dim"])
    wf = _filtration_in(doc["weight_filtration"], dim, True, "k")
    ff = _filtration_in(doc["hodge_filtration"], dim, False, "p")
    ops = tuple(_matrix_in(m) for m in doc.get("operators", []))
    graded = {}
    global_pairing = None
    for p in doc.get("pairings", []):
        if p.get("weight") == "global":
            global_pairing = _pairing_in(p)
        else:
            graded[int(p["weight"])] = _pairing_in(p)
    try:
        datum = make_datum(wf, ff, ops, graded, int(doc.get("twist_tag", 0)))
    except ValueError as exc:
        raise ValidationError(str(exc))
    for w in datum.weights():
        if datum.weight_filtration.graded_dim(w) and datum.pairing(w) is None:
            raise ValidationError(f"missing pairing for the nonzero graded piece at weight {w}")
    if "log_operator" in doc or global_pairing is not None:
        if global_pairing is None or "log_operator" not in doc or "weight" not in doc:
            raise ValidationError("paired documents need weight, global pairing and log_operator")
        try:
            return PairedDatum(datum, int(doc["weight"]), global_pairing, _matrix_in(doc["log_operator"]))
        except ValueError as exc:
            raise ValidationError(str(exc))
    return datum


# ---------------------------------------------------------------------------
# Certificates


def serialize_certificate(cert) -> str:
    from .construct import EmbeddingCertificate, SurjectionCertificate

    if isinstance(cert, EmbeddingCertificate):
        doc = {
            "format_version": FORMAT_CERTIFICATE,
            "kind": "embedding",
            "source": json.loads(serialize(cert.source)),
            "target": json.loads(serialize(cert.target)),
            "map": _matrix_out(cert.injection),
            "shear": cert.shear,
            "conditions": {
                "a": cert.condition_a,
                "b": cert.condition_b,
                "i": cert.condition_i,
                "ii": cert.condition_ii,
                "intertwines": cert.intertwines,
                "new_operator_kills_image": cert.new_operator_kills_image,
            },
            "orbit_status": cert.orbit_verdict.status,
        }
    elif isinstance(cert, SurjectionCertificate):
        doc = {
            "format_version": FORMAT_CERTIFICATE,
            "kind": "surjection",
            "source": json.loads(serialize(cert.source)),
            "target": json.loads(serialize(cert.target)),
            "map": _matrix_out(cert.surjection),
            "conditions": {
                "a": cert.condition_a,
                "b": cert.condition_b,
                "i": cert.condition_i,
                "ii": cert.condition_ii,
                "intertwines": cert.intertwines,
                "new_operator_dies": cert.new_operator_dies,
            },
            "orbit_status": cert.source_verdict.status,
        }
    else:
        raise TypeError(f"cannot serialize {type(cert).__name__}")
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def parse_certificate(text: str):
    """Parse a certificate document into its raw pieces (kind, source,
    target, map, claimed conditions)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}")
    if doc.get("format_version") != FORMAT_CERTIFICATE:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    kind = doc.get("kind")
    if kind not in ("embedding", "surjection"):
        raise ParseError(f"unknown certificate kind {kind!r}")
    source = parse(json.dumps(doc["source"]))
    target = parse(json.dumps(doc["target"]))
    mp = _matrix_in(doc["map"])
    return {
        "kind": kind,
        "source": source,
        "target": target,
        "map": mp,
        "conditions": doc.get("conditions", {}),
        "orbit_status": doc.get("orbit_status"),
        "shear": doc.get("shear", 0),
    }
