"""Versioned JSON documents for factorizations, morphisms, graded modules and reports.

Layout::

    {"format_version": 1, "field": "Q" | {"Fp": p}, "variable": "x",
     "payload": {"kind": "factorization", ...}}

Polynomials are coefficient arrays, lowest degree first; matrices are nested
row-major arrays.  Rationals that are not integers are written ``"a/b"``.
Serialization is canonical (sorted keys, two-space indent, trailing newline),
so ``serialize(parse(text))`` is the canonical form of ``text``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .linalg import FieldSpec, KMatrix, Poly, PolyMatrix
from .mf import MatrixFactorization, MFMorphism, Potential
from .rootstack import GradedModule

FORMAT_VERSION = 1
KINDS = ("factorization", "morphism", "graded-module", "report")


class DocumentError(ValueError):
    """Semantic problem: the text is valid JSON but violates an invariant."""


class DocumentSyntaxError(DocumentError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Document:
    field: FieldSpec
    kind: str
    payload: Any        # MatrixFactorization | MFMorphism | GradedModule | dict
    variable: str = "x"
    format_version: int = FORMAT_VERSION


# --- encoding ---------------------------------------------------------------

def _enc_scalar(F: FieldSpec, c):
    if F.p is not None:
        return int(c)
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _enc_poly(p: Poly) -> list:
    return [_enc_scalar(p.field, c) for c in p.coeffs]


def _enc_pmat(A: PolyMatrix) -> list:
    return [[_enc_poly(A[i, j]) for j in range(A.cols)] for i in range(A.rows)]


def _enc_kmat(A: KMatrix) -> list:
    return [[_enc_scalar(A.field, v) for v in row] for row in A.data]


def _enc_field(F: FieldSpec):
    return "Q" if F.p is None else {"Fp": F.p}


def encode_factorization(M: MatrixFactorization) -> dict:
    return {
        "kind": "factorization",
        "n": M.n,
        "potential": _enc_poly(M.W),
        "ranks": list(M.ranks),
        "maps": [_enc_pmat(d) for d in M.maps],
    }


def encode_morphism(f: MFMorphism) -> dict:
    return {
        "kind": "morphism",
        "source": encode_factorization(f.source),
        "target": encode_factorization(f.target),
        "components": [_enc_pmat(c) for c in f.comps],
    }


def encode_graded_module(A: GradedModule) -> dict:
    return {"kind": "graded-module", "n": A.n, "dims": list(A.dims), "action": [_enc_kmat(u) for u in A.action]}


def encode_payload(obj) -> dict:
    if isinstance(obj, MatrixFactorization):
        return encode_factorization(obj)
    if isinstance(obj, MFMorphism):
        return encode_morphism(obj)
    if isinstance(obj, GradedModule):
        return encode_graded_module(obj)
    if isinstance(obj, dict):
        return {"kind": "report", "data": obj}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def make_document(obj, field: FieldSpec | None = None, variable: str = "x") -> Document:
    if field is None:
        field = obj.field
    return Document(field, encode_payload(obj)["kind"], obj, variable)


def to_json(doc: Document) -> dict:
    return {
        "format_version": doc.format_version,
        "field": _enc_field(doc.field),
        "variable": doc.variable,
        "payload": encode_payload(doc.payload),
    }


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize(doc: Document) -> str:
    return dumps(to_json(doc))


# --- decoding ---------------------------------------------------------------

def _require(cond, msg):
    if not cond:
        raise DocumentError(msg)


def _dec_field(raw) -> FieldSpec:
    if raw == "Q":
        return FieldSpec.rationals()
    if isinstance(raw, dict) and set(raw) == {"Fp"}:
        p = raw["Fp"]
        _require(isinstance(p, int) and not isinstance(p, bool), "field: Fp modulus must be an integer")
        try:
            return FieldSpec.prime(p)
        except ValueError as exc:
            raise DocumentError(f"field: {exc}") from None
    raise DocumentError('field must be "Q" or {"Fp": p}')


def _dec_scalar(F: FieldSpec, raw, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise DocumentError(f"{where}: coefficient {raw!r} must be an integer or an 'a/b' string")
    try:
        value = Fraction(raw) if isinstance(raw, str) else raw
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: cannot read coefficient {raw!r}") from None
    if F.p is not None and isinstance(value, Fraction) and value.denominator % F.p == 0:
        raise DocumentError(f"{where}: denominator of {raw!r} vanishes in {F}")
    return F.elem(value)


def _dec_poly(F, raw, where) -> Poly:
    _require(isinstance(raw, list), f"{where}: polynomial must be a coefficient array")
    return Poly(F, [_dec_scalar(F, c, where) for c in raw])


def _dec_pmat(F, raw, rows, cols, where) -> PolyMatrix:
    _require(isinstance(raw, list) and len(raw) == rows
             and all(isinstance(r, list) and len(r) == cols for r in raw),
             f"{where}: expected a {rows}x{cols} matrix")
    return PolyMatrix.from_rows(F, [[_dec_poly(F, e, where) for e in r] for r in raw], cols)


def _dec_int_list(raw, length, where):
    _require(isinstance(raw, list) and all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in raw),
             f"{where}: expected a list of nonnegative integers")
    _require(length is None or len(raw) == length, f"{where}: expected {length} entries")
    return list(raw)


def _dec_kind(raw, kind):
    _require(isinstance(raw, dict), "payload must be an object")
    _require(raw.get("kind") == kind, f"payload kind must be {kind!r}")


def decode_factorization(F: FieldSpec, raw) -> MatrixFactorization:
    _dec_kind(raw, "factorization")
    n = raw.get("n")
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 1, "factorization: n must be a positive integer")
    W = _dec_poly(F, raw.get("potential"), "potential")
    ranks = _dec_int_list(raw.get("ranks"), n, "ranks")
    maps = raw.get("maps")
    _require(isinstance(maps, list) and len(maps) == n, f"factorization: need exactly n={n} maps")
    try:
        pot = Potential(F, W, n)
    except ValueError as exc:
        raise DocumentError(f"potential: {exc}") from None
    ds = [_dec_pmat(F, m, ranks[(i + 1) % n], ranks[i], f"maps[{i}]") for i, m in enumerate(maps)]
    try:
        return MatrixFactorization(pot, ds)
    except ValueError as exc:
        raise DocumentError(f"factorization: {exc}") from None


def decode_morphism(F: FieldSpec, raw) -> MFMorphism:
    _dec_kind(raw, "morphism")
    M = decode_factorization(F, raw.get("source"))
    N = decode_factorization(F, raw.get("target"))
    _require(M.potential == N.potential, "morphism: source and target potentials differ")
    comps = raw.get("components")
    _require(isinstance(comps, list) and len(comps) == M.n, f"morphism: need {M.n} components")
    cs = [_dec_pmat(F, c, N.rank(i), M.rank(i), f"components[{i}]") for i, c in enumerate(comps)]
    return MFMorphism(M, N, cs)


def decode_graded_module(F: FieldSpec, raw) -> GradedModule:
    _dec_kind(raw, "graded-module")
    n = raw.get("n")
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 2, "graded-module: n must be an integer >= 2")
    dims = _dec_int_list(raw.get("dims"), n, "dims")
    action = raw.get("action")
    _require(isinstance(action, list) and len(action) == n, f"graded-module: need {n} action matrices")
    mats = []
    for w, a in enumerate(action):
        rows, cols = dims[(w + 1) % n], dims[w]
        _require(isinstance(a, list) and len(a) == rows and all(isinstance(r, list) and len(r) == cols for r in a),
                 f"action[{w}]: expected a {rows}x{cols} matrix")
        mats.append(KMatrix(F, rows, cols, [[_dec_scalar(F, v, f"action[{w}]") for v in r] for r in a]))
    return GradedModule(F, n, dims, mats)


def from_json(data) -> Document:
    _require(isinstance(data, dict), "document must be a JSON object")
    extra = set(data) - {"format_version", "field", "variable", "payload"}
    _require(not extra, f"unknown top-level keys: {sorted(extra)}")
    version = data.get("format_version")
    _require(version == FORMAT_VERSION, f"format_version must be {FORMAT_VERSION}")
    F = _dec_field(data.get("field"))
    var = data.get("variable", "x")
    _require(isinstance(var, str) and var.isidentifier(), "variable must be an identifier")
    payload = data.get("payload")
    _require(isinstance(payload, dict) and payload.get("kind") in KINDS,
             f"payload.kind must be one of {', '.join(KINDS)}")
    kind = payload["kind"]
    if kind == "factorization":
        obj = decode_factorization(F, payload)
    elif kind == "morphism":
        obj = decode_morphism(F, payload)
    elif kind == "graded-module":
        obj = decode_graded_module(F, payload)
    else:
        obj = payload.get("data")
        _require(isinstance(obj, dict), "report: data must be an object")
    return Document(F, kind, obj, var, version)


def parse(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return from_json(data)


def load(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
