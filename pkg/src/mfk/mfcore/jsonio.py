"""JSON reading and writing of factorizations and morphisms."""
from __future__ import annotations

import json
from typing import Any

from ..errors import ValidationError
from ..exactalg.grading import WeightSystem
from ..exactalg.matrix import PolyMatrix
from ..exactalg.parse import parse_poly
from ..exactalg.scalars import MODES, RATIONAL
from .factorization import Grading, MatrixFactorization, MFMorphism
from .constructions import infer_grading


def matrix_from_json(rows, names, mode, nrows=None, ncols=None) -> PolyMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValidationError("a matrix must be a list of rows")
    polys = [[parse_poly(str(s), names, mode) for s in r] for r in rows]
    if nrows is not None and len(polys) != nrows:
        raise ValidationError(f"matrix has {len(polys)} rows, expected {nrows}")
    width = ncols if ncols is not None else (len(polys[0]) if polys else 0)
    if any(len(r) != width for r in polys):
        raise ValidationError("ragged matrix")
    return PolyMatrix.from_rows(polys, len(names), width)


def matrix_to_json(m: PolyMatrix, names) -> list:
    return [[p.to_str(names) for p in row] for row in m.rows()]


def mf_from_json(doc: dict[str, Any]) -> MatrixFactorization:
    for key in ("vars", "f", "d1", "d0"):
        if key not in doc:
            raise ValidationError(f"missing field {key!r}")
    mode = doc.get("mode", RATIONAL)
    if mode not in MODES:
        raise ValidationError(f"unknown mode {mode!r}")
    names = [str(v) for v in doc["vars"]]
    f = parse_poly(str(doc["f"]), names, mode)
    d1 = doc["d1"]
    r0 = len(d1)
    r1 = len(d1[0]) if d1 else len(doc["d0"])
    D1 = matrix_from_json(d1, names, mode, r0, r1)
    D0 = matrix_from_json(doc["d0"], names, mode, r1, r0)
    grading = None
    g = doc.get("grading")
    if g is not None:
        w = WeightSystem(tuple(g["weights"]), int(g["degree"]))
        if "deg1" in g and "deg0" in g:
            grading = Grading(w, tuple(g["deg1"]), tuple(g["deg0"]))
        else:
            plain = MatrixFactorization(f, D1, D0, tuple(names), mode, None)
            grading = infer_grading(plain, w)
            if grading is None:
                raise ValidationError("entries are not homogeneous for the given weights")
    return MatrixFactorization(f, D1, D0, tuple(names), mode, grading)


def mf_to_json(P: MatrixFactorization) -> dict:
    names = P.vars
    doc = {
        "mode": P.mode,
        "vars": list(names),
        "f": P.f.to_str(names),
        "d1": matrix_to_json(P.d1, names),
        "d0": matrix_to_json(P.d0, names),
    }
    if P.grading is not None:
        g = P.grading
        doc["grading"] = {"weights": list(g.weights.weights), "degree": g.d,
                          "deg1": list(g.deg1), "deg0": list(g.deg0)}
    return doc


def morphism_from_json(doc: dict, source: MatrixFactorization, target: MatrixFactorization) -> MFMorphism:
    names, mode = source.vars, source.mode
    a1 = matrix_from_json(doc["a1"], names, mode, target.r1, source.r1)
    a0 = matrix_from_json(doc["a0"], names, mode, target.r0, source.r0)
    return MFMorphism(source, target, a1, a0)


def morphism_to_json(alpha: MFMorphism) -> dict:
    names = alpha.source.vars
    return {"a1": matrix_to_json(alpha.a1, names), "a0": matrix_to_json(alpha.a0, names)}


def load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2)
