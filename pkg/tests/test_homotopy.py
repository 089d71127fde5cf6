from __future__ import annotations

import random

import pytest
import sympy

from conftest import e_q, make_mf
from mfk.clifford import DiagonalForm, beh_theta, regular_module
from mfk.errors import MfkError, UngradedError, WindowCapExceeded
from mfk.exactalg import Poly, PolyMatrix, monomials_of_degree, parse_poly
from mfk.homotopy import (
    degree_zero_cycles,
    find_homotopy_equivalence,
    find_null_homotopy,
    hom_homology_dims,
    is_null_homotopic,
)
from mfk.mfcore import (
    F_THEN_ID,
    MFMorphism,
    cone,
    direct_sum,
    trivial_mf,
)
from mfk.mfcore.factorization import OddMap, boundary_even, boundary_odd
from mfk.theta import ade_factorizations, ade_suite


# ---------------------------------------------------------------- dense oracle

def _slice(P, Q, parity, t):
    """Exponent-level basis of degree-t maps, as (block, i, j, e)."""
    gp, gq = P.grading, Q.grading
    w, d = gp.weights, gp.d
    if parity == 0:
        blocks = (("a1", Q.r1, P.r1, lambda i, j: t + gq.deg1[i] - gp.deg1[j]),
                  ("a0", Q.r0, P.r0, lambda i, j: t + gq.deg0[i] - gp.deg0[j]))
    else:
        blocks = (("b1", Q.r0, P.r1, lambda i, j: t + gq.deg0[i] - gp.deg1[j]),
                  ("b0", Q.r1, P.r0, lambda i, j: t + d + gq.deg1[i] - gp.deg0[j]))
    out = []
    for name, r, c, deg in blocks:
        for i in range(r):
            for j in range(c):
                out += [(name, i, j, e) for e in monomials_of_degree(w, deg(i, j))]
    return out


def _as_map(P, Q, parity, b):
    name, i, j, e = b
    n = P.nvars
    mats = {}
    shapes = {"a1": (Q.r1, P.r1), "a0": (Q.r0, P.r0), "b1": (Q.r0, P.r1), "b0": (Q.r1, P.r0)}
    for key in (("a1", "a0") if parity == 0 else ("b1", "b0")):
        ent = {(i, j): Poly.monomial(e)} if key == name else {}
        mats[key] = PolyMatrix(*shapes[key], n, ent)
    if parity == 0:
        return MFMorphism(P, Q, mats["a1"], mats["a0"])
    return OddMap(P, Q, mats["b1"], mats["b0"])


def _coords(mats: dict) -> dict:
    out = {}
    for name, m in mats.items():
        for (i, j), p in m.entries.items():
            for e, c in p.terms.items():
                out[(name, i, j, e)] = c
    return out


def _rank(P, Q, parity, t):
    vecs = []
    for b in _slice(P, Q, parity, t):
        m = _as_map(P, Q, parity, b)
        img = boundary_even(m) if parity == 0 else boundary_odd(m)
        mats = {"b1": img.b1, "b0": img.b0} if parity == 0 else {"a1": img.a1, "a0": img.a0}
        vecs.append(_coords(mats))
    keys = sorted({k for v in vecs for k in v}, key=repr)
    if not vecs or not keys:
        return 0
    return sympy.Matrix([[v.get(k, 0) for k in keys] for v in vecs]).rank()


def oracle_table(P, Q, ts):
    d = P.grading.d
    out = {}
    for t in ts:
        h0 = len(_slice(P, Q, 0, t)) - _rank(P, Q, 0, t) - _rank(P, Q, 1, t - d)
        h1 = len(_slice(P, Q, 1, t)) - _rank(P, Q, 1, t) - _rank(P, Q, 0, t)
        out[t] = (h0, h1)
    return out


def _pairs():
    for entry in ade_suite()[:6]:
        mfs = ade_factorizations(entry)
        for P in mfs:
            for Q in mfs:
                yield entry[0], P, Q
    yield "E_q n=2", e_q(2), e_q(2)


@pytest.mark.parametrize("name,P,Q", list(_pairs()))
def test_hom_homology_matches_dense_oracle(name, P, Q):
    hh = hom_homology_dims(P, Q)
    ts = sorted(hh.table)
    assert oracle_table(P, Q, ts) == {t: hh.table[t] for t in ts}


# ---------------------------------------------------------------- examples

def test_hom_homology_x_squared():
    P = make_mf("x^2", [["x"]], [["x"]], vars=("x",), weights=(1,), degree=2)
    assert hom_homology_dims(P, P).totals == (1, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_endomorphisms_of_koszul_quadric(n):
    assert hom_homology_dims(e_q(n), e_q(n)).totals == (2 ** (n - 1), 2 ** (n - 1))


def test_xy_pair_homology():
    A = make_mf("x*y", [["x"]], [["y"]], weights=(1, 1), degree=2)
    B = make_mf("x*y", [["y"]], [["x"]], weights=(1, 1), degree=2)
    assert hom_homology_dims(A, A).totals == (1, 0)
    assert hom_homology_dims(A, B).totals == (0, 1)


def test_hom_homology_needs_grading():
    A = make_mf("x*y", [["x"]], [["y"]])
    with pytest.raises(UngradedError):
        hom_homology_dims(A, A)


def test_window_cap_reports_partial():
    P = e_q(3)
    with pytest.raises(WindowCapExceeded) as info:
        hom_homology_dims(P, P, cap=-10)
    assert info.value.partial is not None and info.value.partial.table


def test_boundary_squares_to_zero():
    rng = random.Random(4)
    P, Q = e_q(2), e_q(2)
    n = P.nvars
    for _ in range(10):
        def rnd(r, c):
            return PolyMatrix.from_rows([[Poly.monomial((rng.randint(0, 2), rng.randint(0, 2)), rng.randint(-2, 2))
                                          for _ in range(c)] for _ in range(r)], n)
        a = MFMorphism(P, Q, rnd(Q.r1, P.r1), rnd(Q.r0, P.r0))
        dd = boundary_odd(boundary_even(a))
        assert dd.a1 == PolyMatrix.zeros(Q.r1, P.r1, n) and dd.a0 == PolyMatrix.zeros(Q.r0, P.r0, n)
        h = OddMap(P, Q, rnd(Q.r0, P.r1), rnd(Q.r1, P.r0))
        hh = boundary_even(boundary_odd(h))
        assert hh.b1 == PolyMatrix.zeros(Q.r0, P.r1, n) and hh.b0 == PolyMatrix.zeros(Q.r1, P.r0, n)


# ---------------------------------------------------------------- null-homotopies

def test_identity_of_trivial_is_null_homotopic():
    T = trivial_mf(1, F_THEN_ID, parse_poly("x^2", ["x"]), ["x"])
    alpha = MFMorphism.identity(T)
    cert = find_null_homotopy(alpha)
    assert cert is not None and cert.verify(alpha)


def test_identity_of_x_is_not_null_homotopic():
    P = make_mf("x^2", [["x"]], [["x"]], vars=("x",))
    for B in (1, 3, 5):
        assert find_null_homotopy(MFMorphism.identity(P), B) is None


def test_zero_morphism_has_zero_homotopy():
    A = make_mf("x*y", [["x"]], [["y"]])
    cert = find_null_homotopy(MFMorphism.zero(A, A))
    assert cert is not None and cert.verify(MFMorphism.zero(A, A))
    assert not cert.h.b1.entries and not cert.h.b0.entries


def test_null_homotopy_rejects_non_cycles():
    A = make_mf("x*y", [["x"]], [["y"]])
    bad = MFMorphism(A, A, PolyMatrix.scalar(1, 1, 2), PolyMatrix.scalar(1, 2, 2))
    with pytest.raises(MfkError):
        find_null_homotopy(bad)


def test_graded_identity_not_null_homotopic_when_no_units():
    for entry in ade_suite():
        for P in ade_factorizations(entry):
            assert hom_homology_dims(P, P).totals[0] >= 1
            assert not is_null_homotopic(MFMorphism.identity(P))


def test_degree_zero_classes_match_homology():
    for entry in ade_suite()[:4]:
        mfs = ade_factorizations(entry)
        for P in mfs:
            for Q in mfs:
                h0 = hom_homology_dims(P, Q).table.get(0, (0, 0))[0]
                cycles = degree_zero_cycles(P, Q)
                nonnull = [c for c in cycles if not is_null_homotopic(c)]
                if h0 == 0:
                    assert not nonnull
                else:
                    assert len(nonnull) >= 1 and len(cycles) >= h0


# ---------------------------------------------------------------- equivalences

def test_equivalence_with_contractible_summand():
    A = make_mf("x*y", [["x"]], [["y"]])
    S = direct_sum(A, cone(MFMorphism.identity(A)))
    cert = find_homotopy_equivalence(A, S)
    assert cert is not None and cert.verify()


def test_theta_of_free_module_equivalent_to_koszul():
    for n in (1, 2):
        q = DiagonalForm((1,) * n)
        # rank-1 free module: the regular representation
        Th = beh_theta(regular_module(q), [f"x{i}" for i in range(1, n + 1)])
        cert = find_homotopy_equivalence(Th, e_q(n))
        assert cert is not None and cert.verify()


def test_equivalence_inconclusive_and_mismatch():
    P = make_mf("x^2", [["x"]], [["x"]], vars=("x",))
    T = trivial_mf(1, F_THEN_ID, P.f, P.vars)
    assert find_homotopy_equivalence(P, T, bound=3) is None
    Q = make_mf("x^3", [["x"]], [["x^2"]], vars=("x",))
    with pytest.raises(MfkError):
        find_homotopy_equivalence(P, Q)
