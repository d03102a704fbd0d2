"""JSON encoding of fields, scalars, matrices, instance files and
certificates.  All numbers are strings so no consumer can lose precision;
output is canonical (sorted keys, fixed separators) so identical inputs
yield byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InstanceParseError
from .fields import ExtensionField, PrimeField, QQ, RationalField, make_field
from .linalg import Mat
from .normalform import NormalFormCertificate
from .symplectic import SymplecticSpace

__all__ = [
    "encode_scalar",
    "decode_scalar",
    "encode_matrix",
    "decode_matrix",
    "field_to_json",
    "field_from_json",
    "instance_to_json",
    "instance_from_json",
    "certificate_to_json",
    "certificate_from_json",
    "dumps_canonical",
]


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# --- scalars ----------------------------------------------------------------


def encode_scalar(field, x):
    if isinstance(field, RationalField):
        return str(x)
    if isinstance(field, PrimeField):
        return str(x.value)
    return [encode_scalar(field.base, c) for c in x.coeffs]


def decode_scalar(field, s):
    try:
        if isinstance(field, RationalField):
            return Fraction(str(s))
        if isinstance(field, PrimeField):
            return field.from_int(int(s))
        if isinstance(field, ExtensionField):
            coeffs = [decode_scalar(field.base, c) for c in s]
            if len(coeffs) != field.degree:
                raise InstanceParseError(f"expected {field.degree} coefficients, got {len(coeffs)}")
            from .fields import ExtElement

            return ExtElement(field, tuple(coeffs))
    except InstanceParseError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InstanceParseError(f"bad scalar encoding {s!r}") from exc
    raise InstanceParseError(f"unknown field {field!r}")


# --- matrices ---------------------------------------------------------------


def encode_matrix(m: Mat):
    return [[encode_scalar(m.field, x) for x in row] for row in m.rows]


def decode_matrix(field, rows) -> Mat:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InstanceParseError("matrix must be a list of rows")
    return Mat(field, [[decode_scalar(field, x) for x in r] for r in rows])


# --- field descriptors ------------------------------------------------------


def field_to_json(field):
    if isinstance(field, RationalField):
        return {"kind": "rational"}
    if isinstance(field, PrimeField):
        return {"kind": "prime", "p": str(field.p)}
    if isinstance(field, ExtensionField):
        return {
            "kind": "extension",
            "p": str(field.base.p),
            "modulus": [str(c.value) for c in field.modulus],
        }
    raise InstanceParseError(f"unknown field {field!r}")


def field_from_json(obj):
    try:
        kind = obj["kind"]
        if kind == "rational":
            return QQ
        if kind == "prime":
            return make_field("prime", p=int(obj["p"]))
        if kind == "extension":
            return make_field("extension", p=int(obj["p"]), modulus=[int(c) for c in obj["modulus"]])
    except InstanceParseError:
        raise
    except Exception as exc:
        raise InstanceParseError(f"bad field descriptor {obj!r}") from exc
    raise InstanceParseError(f"unknown field kind {obj!r}")


# --- instance files ---------------------------------------------------------


def instance_to_json(space: SymplecticSpace, a: Mat) -> dict:
    return {
        "field": field_to_json(space.field),
        "n": space.n,
        "matrix": encode_matrix(a),
    }


def instance_from_json(obj) -> tuple[SymplecticSpace, Mat]:
    try:
        field = field_from_json(obj["field"])
        n = int(obj["n"])
        rows = obj["matrix"]
    except InstanceParseError:
        raise
    except Exception as exc:
        raise InstanceParseError("malformed instance file") from exc
    if n < 1:
        raise InstanceParseError("n must be positive")
    if len(rows) != 2 * n or any(len(r) != 2 * n for r in rows):
        raise InstanceParseError("matrix must be 2n x 2n")
    return SymplecticSpace(field, n), decode_matrix(field, rows)


# --- certificates -----------------------------------------------------------


def certificate_to_json(cert: NormalFormCertificate) -> dict:
    field = cert.space.field
    spec = None
    if cert.jordan_spec is not None:
        spec = [
            {"eigenvalue": encode_scalar(field, lam), "sizes": list(sizes)}
            for lam, sizes in cert.jordan_spec
        ]
    return {
        "field": field_to_json(field),
        "n": cert.space.n,
        "A": encode_matrix(cert.matrix),
        "C": encode_matrix(cert.basis),
        "B": encode_matrix(cert.block),
        "case": cert.case,
        "jordan_spec": spec,
        "checks": cert.checks,
    }


def certificate_from_json(obj) -> NormalFormCertificate:
    try:
        field = field_from_json(obj["field"])
        n = int(obj["n"])
        space = SymplecticSpace(field, n)
        a = decode_matrix(field, obj["A"])
        c = decode_matrix(field, obj["C"])
        b = decode_matrix(field, obj["B"])
        case = obj["case"]
        raw_spec = obj.get("jordan_spec")
    except InstanceParseError:
        raise
    except Exception as exc:
        raise InstanceParseError("malformed certificate file") from exc
    if case not in ("jordan", "descent"):
        raise InstanceParseError(f"unknown case tag {case!r}")
    spec = None
    if raw_spec is not None:
        spec = tuple(
            (decode_scalar(field, e["eigenvalue"]), tuple(int(s) for s in e["sizes"]))
            for e in raw_spec
        )
    if a.nrows != 2 * n or a.ncols != 2 * n or c.nrows != 2 * n or b.nrows != n:
        raise InstanceParseError("certificate matrices have inconsistent shapes")
    return NormalFormCertificate(space, a, c, b, case, spec, obj.get("checks"))
