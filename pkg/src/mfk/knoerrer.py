"""Complex (period 2) and real (period 8) Knoerrer functors P -> P (x) X."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .clifford.absgroups import abs_class, pair_classes
from .clifford.algebra import DiagonalForm
from .clifford.modules import GradedCliffordModule, beh_theta, column_module_X8, default_names, mf_to_clifford_module
from .errors import MfkError, ValidationError, VerificationFailed
from .exactalg.grading import WeightSystem
from .exactalg.scalars import GAUSSIAN, RATIONAL, I
from .homotopy import hom_homology_dims
from .mfcore.constructions import infer_grading, tensor
from .mfcore.factorization import MatrixFactorization, validate
from .mfcore.stripping import strip_trivial_summands


def fresh_names(base: tuple, taken) -> tuple:
    """base itself, or base with a numeric suffix, avoiding every name in taken."""
    taken = set(taken)
    names, k = base, 0
    while taken & set(names):
        k += 1
        names = tuple(f"{b}_{k}" for b in base)
    return names


def _regrade(X: MatrixFactorization, P: MatrixFactorization) -> MatrixFactorization:
    """Give X weights deg(f)/2 when P is graded with even degree, else drop the grading."""
    g = P.grading
    if g is None or g.weights.degree % 2:
        return X.without_grading()
    d = g.weights.degree
    graded = infer_grading(X.without_grading(), WeightSystem((d // 2,) * X.nvars, d))
    if graded is None:
        return X.without_grading()
    return MatrixFactorization(X.f, X.d1, X.d0, X.vars, X.mode, graded, X.labels1, X.labels0)


def y_module() -> GradedCliffordModule:
    """The 1|1 module over Cliff(u^2 + v^2) with e_1 = 1 and e_2 = i, -i."""
    from .exactalg.smatrix import SMat

    form = DiagonalForm((1, 1), GAUSSIAN)
    up = (SMat.scalar(1, 1), SMat.scalar(1, I))
    down = (SMat.scalar(1, 1), SMat.scalar(1, -I))
    return GradedCliffordModule(form, 1, 1, up, down).check()


def y_factorization(names=("u", "v")) -> MatrixFactorization:
    """([u + i v], [u - i v]), a factorization of u^2 + v^2."""
    return beh_theta(y_module(), names)


def x8_factorization(names=None, positive: bool = False) -> MatrixFactorization:
    """Theta of the first-column module of Mat16(R), a factorization of -sum u_i^2."""
    return beh_theta(column_module_X8(positive), names or default_names(8, "u"))


def knorrer_complex(P: MatrixFactorization) -> MatrixFactorization:
    if P.mode != GAUSSIAN:
        raise ValidationError("the complex Knoerrer functor needs gaussian scalars")
    Y = _regrade(y_factorization(fresh_names(("u", "v"), P.vars)), P)
    return tensor(P, Y)


def knorrer_real8(P: MatrixFactorization, positive: bool = False) -> MatrixFactorization:
    if P.mode != RATIONAL:
        raise ValidationError("the real Knoerrer functor is defined over rational scalars")
    X = _regrade(x8_factorization(fresh_names(default_names(8, "u"), P.vars), positive), P)
    return tensor(P, X)


def _summary(P: MatrixFactorization) -> dict:
    return {"f": P.f.to_str(P.vars), "vars": list(P.vars), "r1": P.r1, "r0": P.r0,
            "graded": P.grading is not None}


@dataclass
class KnoerrerReport:
    kind: str
    source: dict
    output: dict
    multiplier: int
    valid: bool
    graded: bool
    abs: Optional[dict] = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def knorrer_report(P: MatrixFactorization, kind: str = "complex", positive: bool = False):
    """Apply a Knoerrer functor and summarize; returns (output, report)."""
    if kind == "complex":
        out, mult = knorrer_complex(P), 2
    elif kind == "real8":
        out, mult = knorrer_real8(P, positive), 16
    else:
        raise MfkError(f"unknown Knoerrer functor {kind!r}")
    assert out.r1 + out.r0 == mult * (P.r1 + P.r0)
    rep = KnoerrerReport(kind, _summary(P), _summary(out), mult, validate(out).valid,
                         out.grading is not None)
    return out, rep


# ------------------------------------------------------------- verifications

@dataclass
class EndReport:
    name: str
    h0: int
    h1: int
    expected: tuple
    seconds: float
    table: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.h0, self.h1) == tuple(self.expected)

    def to_dict(self) -> dict:
        return {"name": self.name, "h0": self.h0, "h1": self.h1, "expected": list(self.expected),
                "passed": self.passed, "seconds": round(self.seconds, 3), "slices": self.table}


def _end_check(name: str, P: MatrixFactorization, expected: tuple, strict: bool) -> EndReport:
    t = time.perf_counter()
    hh = hom_homology_dims(P, P)
    rep = EndReport(name, hh.totals[0], hh.totals[1], expected, time.perf_counter() - t,
                    {str(k): list(v) for k, v in sorted(hh.table.items())})
    if strict and not rep.passed:
        raise VerificationFailed(f"{name}: End homology {rep.h0, rep.h1}, expected {expected}")
    return rep


def verify_x8_endomorphisms(strict: bool = True) -> EndReport:
    """H*(End(X8)) should be the ground field in even degree."""
    return _end_check("X8", x8_factorization(), (1, 0), strict)


def verify_y_endomorphisms(strict: bool = True) -> EndReport:
    return _end_check("Y", y_factorization(), (1, 0), strict)


@dataclass
class DiagramReport:
    mode: str
    n: int
    input_class: dict
    output_class: Optional[dict]
    expected_class: Optional[dict]
    stripped: int
    status: str  # "passed", "failed" or "inconclusive"
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "passed"

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _recognize(out: MatrixFactorization):
    try:
        return mf_to_clifford_module(out), 0
    except MfkError:
        pass
    res = strip_trivial_summands(out)
    try:
        return mf_to_clifford_module(res.mf), res.removed
    except MfkError:
        return None, res.removed


def verify_periodicity_diagram_quadratic(M: GradedCliffordModule, mode: Optional[str] = None) -> DiagramReport:
    """Class-level check that Knoerrer periodicity matches the Bott pairing.

    Only quadratic f is handled: there the Clifford module of a linear
    factorization carries the whole ABS class.
    """
    mode = mode or M.form.mode
    if mode != M.form.mode:
        raise ValidationError(f"module is over {M.form.mode} scalars, not {mode}")
    c_in = abs_class(M)
    P = beh_theta(M)
    if mode == GAUSSIAN:
        out, bott = knorrer_complex(P), abs_class(y_module())
    else:
        out, bott = knorrer_real8(P), abs_class(column_module_X8())
    N, stripped = _recognize(out)
    expected = pair_classes(c_in, bott)
    if N is None:
        return DiagramReport(mode, M.n, c_in.to_dict(), None, expected.to_dict(), stripped, "inconclusive",
                             "output could not be brought to linear form")
    c_out = abs_class(N)
    ok = c_out.coords == expected.coords and c_out.orders == expected.orders
    return DiagramReport(mode, M.n, c_in.to_dict(), c_out.to_dict(), expected.to_dict(), stripped,
                         "passed" if ok else "failed")
