"""Hochster's theta pairing  theta(M, N) = l(Tor_2(M, N)) - l(Tor_1(M, N)).

M = coker(d1) of P and N = coker(d1') of Q over R = k[x]/(f).  Tor is the
homology of the 2-periodic resolution of M (maps d1, d0, d1, ...) tensored
with N, computed one graded degree at a time.  Since f = d1' d0', the ideal
f*k[x] already lies in the image of d1', so N is presented over k[x] by d1'
alone and no reduction modulo f is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import UngradedError, ValidationError, WindowCapExceeded
from .exactalg.grading import milnor_number, monomials_of_degree
from .exactalg.linalg import Eliminator
from .homotopy import _default_cap
from .mfcore.constructions import cone, direct_sum, shift
from .mfcore.factorization import MatrixFactorization, MFMorphism


def _add_shifted(vec: dict, key_prefix, p, e, c=1):
    for ex, v in p.terms.items():
        k = key_prefix + (tuple(a + b for a, b in zip(ex, e)),)
        s = vec.get(k, 0) + c * v
        if s:
            vec[k] = s
        else:
            vec.pop(k, None)


class _TorComplex:
    """The complex F_k (x) N with F_{2m} = P0(m d), F_{2m+1} = P1(m d)."""

    def __init__(self, P: MatrixFactorization, Q: MatrixFactorization):
        self.P, self.Q = P, Q
        self.w = P.grading.weights
        self.d = self.w.degree
        # generator degrees are the negated degree labels
        self.g1 = [-a for a in P.grading.deg1]
        self.g0 = [-a for a in P.grading.deg0]
        self.n1 = [-a for a in Q.grading.deg1]
        self.n0 = [-a for a in Q.grading.deg0]
        self.qcols = [[(a, p) for (a, b), p in Q.d1.entries.items() if b == k] for k in range(Q.r1)]
        self.cols = {1: self._columns(P.d1, P.r1), 0: self._columns(P.d0, P.r0)}

    @staticmethod
    def _columns(m, ncols):
        cols = [[] for _ in range(ncols)]
        for (a, b), p in m.entries.items():
            cols[b].append((a, p))
        return cols

    def gens(self, k: int) -> list:
        base = self.g1 if k % 2 else self.g0
        return [g + (k // 2) * self.d for g in base]

    def V(self, k: int, t: int) -> list:
        return [(j, a, e) for j, g in enumerate(self.gens(k)) for a, h in enumerate(self.n0)
                for e in monomials_of_degree(self.w, t - g - h)]

    def U(self, k: int, t: int) -> list:
        out = []
        for j, g in enumerate(self.gens(k)):
            for c, h in enumerate(self.n1):
                for e in monomials_of_degree(self.w, t - g - h):
                    vec: dict = {}
                    for a, p in self.qcols[c]:
                        _add_shifted(vec, (j, a), p, e)
                    if vec:
                        out.append(vec)
        return out

    def phi(self, k: int, t: int) -> list:
        """Images of V_k(t) in F_{k-1} (x) N."""
        cols = self.cols[k % 2]
        out = []
        for j, a, e in self.V(k, t):
            vec: dict = {}
            for b, p in cols[j]:
                _add_shifted(vec, (b, a), p, e)
            if vec:
                out.append(vec)
        return out

    def tor(self, i: int, t: int) -> int:
        def rank(*groups):
            el = Eliminator()
            for g in groups:
                for v in g:
                    el.add(v)
            return el.rank

        U_prev = self.U(i - 1, t)
        U_here = self.U(i, t)
        return (len(self.V(i, t)) - rank(U_prev, self.phi(i, t)) + rank(U_prev)
                - rank(U_here, self.phi(i + 1, t)))


def _check_inputs(P: MatrixFactorization, Q: MatrixFactorization):
    if P.vars != Q.vars or P.f != Q.f:
        raise ValidationError("theta needs two factorizations of the same f in the same variables")
    if P.f.is_zero():
        raise ValidationError("theta needs f != 0")
    if P.grading is None or Q.grading is None:
        raise UngradedError("theta needs graded factorizations")
    if P.grading.weights != Q.grading.weights:
        raise UngradedError("theta needs a common weight system")
    return milnor_number(P.f, P.grading.weights)


@dataclass
class ThetaReport:
    tor: dict                      # i -> total length of Tor_i
    tables: dict = field(default_factory=dict)   # i -> {t: dim}
    milnor: Optional[int] = None

    @property
    def theta(self) -> int:
        return self.tor[2] - self.tor[1]

    @property
    def periodic(self) -> dict:
        return {"tor3_eq_tor1": self.tor[3] == self.tor[1], "tor4_eq_tor2": self.tor[4] == self.tor[2]}

    @property
    def valid(self) -> bool:
        return all(self.periodic.values())

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "tor_lengths": {str(i): v for i, v in sorted(self.tor.items())},
            "periodicity": self.periodic,
            "valid": self.valid,
            "milnor_number": self.milnor,
            "tables": {str(i): {str(t): v for t, v in sorted(tab.items()) if v}
                       for i, tab in sorted(self.tables.items())},
        }


def _scan(tc: _TorComplex, i: int, cap: int) -> dict:
    w = tc.w
    margin = w.max_weight
    socle = max(sum(w.degree - 2 * wi for wi in w.weights), 0)
    degs = [g + h for g in tc.gens(i) for h in tc.n0]
    if not degs:
        return {}
    lo, top = min(degs), max(degs) + socle
    table = {}
    t = lo - margin
    last = top
    while True:
        v = tc.tor(i, t)
        table[t] = v
        if v:
            last = max(last, t)
        if t >= last + margin:
            return table
        if t - top > cap:
            raise WindowCapExceeded(f"Tor_{i} window exceeded the cap of {cap} degrees", table)
        t += 1


def theta(P: MatrixFactorization, Q: MatrixFactorization, cap: Optional[int] = None) -> ThetaReport:
    mu = _check_inputs(P, Q)
    tc = _TorComplex(P, Q)
    cap = _default_cap() if cap is None else cap
    tables = {i: _scan(tc, i, cap) for i in (1, 2, 3, 4)}
    return ThetaReport({i: sum(tab.values()) for i, tab in tables.items()}, tables, mu)


@dataclass
class BilinearityReport:
    checks: dict

    @property
    def passed(self) -> bool:
        return all(c["ok"] for c in self.checks.values())

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": self.checks}


def theta_bilinearity_check(P: MatrixFactorization, P2: MatrixFactorization, N: MatrixFactorization,
                            cycles: Sequence[MFMorphism] = ()) -> BilinearityReport:
    """Additivity over sums, sign change under shift, and the cone relation."""
    th = lambda X: theta(X, N).theta  # noqa: E731
    a, b = th(P), th(P2)
    checks = {
        "direct_sum": {"lhs": th(direct_sum(P, P2)), "rhs": a + b},
        "shift": {"lhs": th(shift(P)), "rhs": -a},
    }
    for k, alpha in enumerate(cycles):
        checks[f"cone_{k}"] = {"lhs": th(cone(alpha)), "rhs": th(alpha.target) - th(alpha.source)}
    for c in checks.values():
        c["ok"] = c["lhs"] == c["rhs"]
    return BilinearityReport(checks)


# ---------------------------------------------------------- ADE plane curves

def _binomial_pair(a: int, b: int, i: int, j: int):
    """Rank-2 factorization of x^a - y^b: [[x^i, y^j], [y^(b-j), x^(a-i)]] and its adjugate."""
    d1 = [[f"x^{i}", f"y^{j}"], [f"y^{b - j}", f"x^{a - i}"]]
    d0 = [[f"x^{a - i}", f"-y^{j}"], [f"-y^{b - j}", f"x^{i}"]]
    return d1, d0


def ade_suite() -> list:
    """(name, f, weights, degree, [(d1, d0), ...]) for a set of ADE plane curves."""
    suite = [
        ("A1 xy", "x*y", (1, 1), 2, [([["x"]], [["y"]]), ([["y"]], [["x"]])]),
        ("A1 x^2-y^2", "x^2-y^2", (1, 1), 2, [([["x-y"]], [["x+y"]]), ([["x+y"]], [["x-y"]])]),
        ("A2", "x^3-y^2", (2, 3), 6, [_binomial_pair(3, 2, 1, 1), _binomial_pair(3, 2, 2, 1)]),
        ("A3", "x^4-y^2", (1, 2), 4, [([["x^2-y"]], [["x^2+y"]]), ([["x^2+y"]], [["x^2-y"]]),
                                      _binomial_pair(4, 2, 1, 1)]),
        ("D4", "x^3-x*y^2", (1, 1), 3, [([["x"]], [["x^2-y^2"]]), ([["x-y"]], [["x^2+x*y"]]),
                                        ([["x^2-y^2"]], [["x"]])]),
        ("D5", "x^4-x*y^2", (2, 3), 8, [([["x"]], [["x^3-y^2"]]), ([["x^3-y^2"]], [["x"]])]),
        ("E6", "x^3-y^4", (4, 3), 12, [_binomial_pair(3, 4, 1, 1), _binomial_pair(3, 4, 1, 2)]),
        ("E7", "x^3-x*y^3", (3, 2), 9, [([["x"]], [["x^2-y^3"]]), ([["x^2-y^3"]], [["x"]])]),
        ("E8", "x^3-y^5", (5, 3), 15, [_binomial_pair(3, 5, 1, 2), _binomial_pair(3, 5, 2, 1)]),
    ]
    return suite


def ade_factorizations(entry, mode: str = "rational") -> list:
    from .mfcore.jsonio import mf_from_json

    name, f, weights, degree, pairs = entry
    return [mf_from_json({"mode": mode, "vars": ["x", "y"], "f": f, "d1": d1, "d0": d0,
                          "grading": {"weights": list(weights), "degree": degree}})
            for d1, d0 in pairs]
