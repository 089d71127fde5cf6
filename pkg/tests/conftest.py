from __future__ import annotations

import random
from fractions import Fraction

import sympy
from hypothesis import HealthCheck, settings

from mfk.clifford import DiagonalForm, module_direct_sum, regular_module
from mfk.clifford.modules import GradedCliffordModule
from mfk.exactalg import Poly, PolyMatrix, WeightSystem, parse_poly
from mfk.exactalg.smatrix import SMat
from mfk.mfcore import MatrixFactorization, koszul_of_variables
from mfk.mfcore.factorization import OddMap, boundary_odd
from mfk.mfcore.jsonio import mf_from_json

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def make_mf(f, d1, d0, vars=("x", "y"), weights=None, degree=None, mode="rational"):
    doc = {"mode": mode, "vars": list(vars), "f": f, "d1": d1, "d0": d0}
    if weights is not None:
        doc["grading"] = {"weights": list(weights), "degree": degree}
    return mf_from_json(doc)


def random_poly(rng: random.Random, nvars: int, max_deg: int = 2, terms: int = 3) -> Poly:
    p = Poly.zero(nvars)
    for _ in range(terms):
        e = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(nvars)] += 1
        p = p + Poly.monomial(e, rng.randint(-3, 3))
    return p


def random_mf(rng: random.Random, nvars: int = 2, names=None) -> MatrixFactorization:
    """Rank 1 or 2 factorization of a random f, ungraded."""
    names = tuple(names or ("x", "y", "z")[:nvars])
    while True:
        if rng.random() < 0.5:
            g, h = random_poly(rng, nvars), random_poly(rng, nvars)
            if g.is_zero() or h.is_zero():
                continue
            d1 = PolyMatrix.from_rows([[g]], nvars)
            d0 = PolyMatrix.from_rows([[h]], nvars)
            f = g * h
        else:
            a, b, c, d = (random_poly(rng, nvars) for _ in range(4))
            f = a * d - b * c
            if f.is_zero():
                continue
            d1 = PolyMatrix.from_rows([[a, b], [c, d]], nvars)
            d0 = PolyMatrix.from_rows([[d, -b], [-c, a]], nvars)
        return MatrixFactorization(f, d1, d0, names, "rational", None)


def e_q(n, coeff=1, mode="rational"):
    """Koszul factorization of coeff * (x1^2 + ... + xn^2), graded with unit weights."""
    names = [f"x{i}" for i in range(1, n + 1)]
    f = parse_poly("+".join(f"{coeff}*{v}^2" for v in names), names, mode)
    gs = [parse_poly(f"{coeff}*{v}", names, mode) for v in names]
    return koszul_of_variables(f, gs, names, mode, WeightSystem((1,) * n, 2))


def random_cycle(rng, P, Q):
    """A boundary d h + h d of a random odd map, hence a cycle P -> Q."""
    n = P.nvars

    def rand(r, c):
        return PolyMatrix.from_rows([[random_poly(rng, n, 1, 2) for _ in range(c)] for _ in range(r)], n)

    h = OddMap(P, Q, rand(Q.r0, P.r1), rand(Q.r1, P.r0))
    return boundary_odd(h)


def conjugate_module(M: GradedCliffordModule, rng) -> GradedCliffordModule:
    """Change basis in both parity pieces by random invertible integer matrices."""
    def rand_inv(k):
        while True:
            A = sympy.Matrix(k, k, lambda i, j: rng.randint(-1, 1) + (2 if i == j else 0))
            if A.det() != 0:
                return A

    A0, A1 = rand_inv(M.m0), rand_inv(M.m1)
    A0i, A1i = A0.inv(), A1.inv()

    def fr(m):
        return [[Fraction(int(x.p), int(x.q)) for x in row] for row in m.tolist()]

    up = [SMat.from_dense(fr(A0 * sympy.Matrix(u.to_dense()) * A1i)) for u in M.up]
    down = [SMat.from_dense(fr(A1 * sympy.Matrix(d.to_dense()) * A0i)) for d in M.down]
    return GradedCliffordModule(M.form, M.m1, M.m0, up, down).check()


def random_module(rng, n):
    q = DiagonalForm(tuple(rng.choice([1, -1]) for _ in range(n)))
    M = regular_module(q)
    if rng.random() < 0.3:
        M = module_direct_sum(M, M.parity_shift())
    return conjugate_module(M, rng) if M.dim <= 16 else M



# -------------------------------------------------- acceptance summary lines

_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid and "criterion" in report.nodeid:
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        outcome, dur = _ACCEPTANCE[name]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({dur:.1f} s)")
