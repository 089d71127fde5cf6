from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from mfk.clifford import (
    CliffordElement,
    DiagonalForm,
    GradedCliffordModule,
    abs_class,
    abs_group,
    beh_theta,
    classify,
    clifford_multiply,
    column_module_X8,
    decompose,
    graded_tensor,
    hom_dim,
    irreducibles,
    mf_to_clifford_module,
    module_direct_sum,
    multiplicities,
    pair_classes,
    pairing_well_defined,
    regular_module,
    smith_normal_form,
    unit_module,
)
from mfk.clifford.snf import matmul
from mfk.errors import MfkError, ValidationError
from mfk.exactalg import I
from mfk.exactalg.smatrix import SMat
from mfk.mfcore import tensor, validate
from conftest import make_mf, random_module

NEG = DiagonalForm.negative_definite


# ---------------------------------------------------------------- algebra

def test_clifford_multiply_examples():
    q = NEG(3)
    e1, e2, e3 = (CliffordElement.generator(3, i) for i in range(3))
    assert clifford_multiply(e1, e1, q) == CliffordElement.scalar(3, -1)
    e12 = CliffordElement.blade(3, [0, 1])
    e23 = CliffordElement.blade(3, [1, 2])
    assert clifford_multiply(e12, e23, q) == CliffordElement.blade(3, [0, 2], -1)
    s = e1 + e2
    assert clifford_multiply(s, s, q) == CliffordElement.scalar(3, -2)


@given(st.lists(st.sampled_from([1, -1, 2]), min_size=1, max_size=4), st.integers(0, 10 ** 6))
def test_clifford_associative_and_relations(coeffs, seed):
    q = DiagonalForm(tuple(coeffs))
    n = q.n
    rng = random.Random(seed)

    def rand():
        return CliffordElement(n, {S: rng.randint(-2, 2) for S in range(1 << n) if rng.random() < 0.5})

    a, b, c = rand(), rand(), rand()
    assert clifford_multiply(clifford_multiply(a, b, q), c, q) == clifford_multiply(a, clifford_multiply(b, c, q), q)
    for i in range(n):
        ei = CliffordElement.generator(n, i)
        assert clifford_multiply(ei, ei, q) == CliffordElement.scalar(n, coeffs[i])
        for j in range(i + 1, n):
            ej = CliffordElement.generator(n, j)
            assert clifford_multiply(ei, ej, q) + clifford_multiply(ej, ei, q) == CliffordElement(n)


def test_clifford_multiply_dimension_mismatch():
    with pytest.raises(MfkError):
        clifford_multiply(CliffordElement.generator(2, 0), CliffordElement.generator(3, 0), NEG(2))


# ---------------------------------------------------------------- classification

def test_classify_examples():
    assert str(classify(NEG(8))) == "Mat16(R)"
    assert str(classify(NEG(1))) == "Mat1(C)"
    assert str(classify(NEG(2))) == "Mat1(H)"
    with pytest.raises(MfkError):
        classify(DiagonalForm((2, 1)))


@pytest.mark.parametrize("n", range(0, 9))
def test_classify_matches_graded_irreducibles(n):
    # graded irreducibles of Cliff(q + <-1>) <-> simple modules of Cliff(q)
    t = classify(NEG(n))
    irr = irreducibles(n + 1, "rational", -1)
    base_dim = {"R": 1, "C": 2, "H": 4}[t.base]
    assert len(irr) == (2 if t.double else 1)
    for S in irr:
        assert S.end_dim == base_dim
        assert S.module.m0 == t.size * base_dim
    assert t.dimension() == 2 ** n


def test_classify_quaternion_relations():
    q = NEG(2)
    i, j = CliffordElement.generator(2, 0), CliffordElement.generator(2, 1)
    k = clifford_multiply(i, j, q)
    assert clifford_multiply(k, k, q) == CliffordElement.scalar(2, -1)
    assert clifford_multiply(j, i, q) == CliffordElement.blade(2, [0, 1], -1)


# ---------------------------------------------------------------- modules and BEH

@pytest.mark.parametrize("seed", range(20))
def test_beh_round_trip(seed):
    rng = random.Random(seed)
    M = random_module(rng, rng.randint(1, 4))
    P = beh_theta(M)
    assert validate(P).valid
    assert mf_to_clifford_module(P).same_as(M)


def test_beh_examples():
    q = DiagonalForm((1,))
    M = GradedCliffordModule(q, 1, 1, (SMat.scalar(1, 1),), (SMat.scalar(1, 1),))
    P = beh_theta(M, ["x"])
    assert P.d1[0, 0].to_str(["x"]) == "x" and P.d0[0, 0].to_str(["x"]) == "x"
    Y = make_mf("u^2+v^2", [["u+i*v"]], [["u-i*v"]], vars=("u", "v"), mode="gaussian")
    N = mf_to_clifford_module(Y)
    assert (N.m1, N.m0) == (1, 1)
    assert N.up[1].get(0, 0) == I and N.down[1].get(0, 0) == -I
    assert beh_theta(N, ["u", "v"]).same_entries(Y)


def test_recognition_rejects_nonlinear():
    P = make_mf("x^3", [["x"]], [["x^2"]], vars=("x",))
    with pytest.raises(MfkError):
        mf_to_clifford_module(P)


def test_relation_violation_reported():
    q = NEG(2)
    one = SMat.scalar(1, 1)
    M = GradedCliffordModule(q, 1, 1, (one, one), (-one, -one))
    assert M.relation_defect() is not None
    with pytest.raises(MfkError):
        beh_theta(M)


def test_x8_module():
    X = column_module_X8()
    assert (X.m1, X.m0) == (8, 8)
    assert X.relation_defect() is None
    assert all(a == -1 for a in X.form.coeffs)
    P = beh_theta(X)
    assert validate(P).valid and P.r1 == 8
    assert all(p.is_linear_form() for p in P.d1.entries.values())
    Xp = column_module_X8(positive=True)
    assert Xp.relation_defect() is None and all(a == 1 for a in Xp.form.coeffs)


def test_graded_tensor_matches_mf_tensor():
    rng = random.Random(7)
    for _ in range(6):
        M, N = random_module(rng, rng.randint(1, 2)), random_module(rng, rng.randint(1, 2))
        nm = [f"x{i}" for i in range(1, M.n + 1)]
        nn = [f"y{i}" for i in range(1, N.n + 1)]
        T = graded_tensor(M, N)
        assert T.relation_defect() is None
        assert (T.m1, T.m0) == (M.m1 * N.m0 + M.m0 * N.m1, M.m0 * N.m0 + M.m1 * N.m1)
        assert beh_theta(T, nm + nn).same_entries(tensor(beh_theta(M, nm), beh_theta(N, nn)))


def test_graded_tensor_rank_one_free_modules():
    one = SMat.scalar(1, 1)
    M = GradedCliffordModule(DiagonalForm((1,)), 1, 1, (one,), (one,))
    T = graded_tensor(M, M)
    assert (T.m1, T.m0) == (2, 2)
    P = make_mf("x^2", [["x"]], [["x"]], vars=("x",))
    Q = make_mf("y^2", [["y"]], [["y"]], vars=("y",))
    assert beh_theta(T, ["x", "y"]).same_entries(tensor(P, Q))


def test_tensor_unit():
    M = regular_module(NEG(2))
    assert graded_tensor(M, unit_module()).same_as(M)


def test_module_json_round_trip():
    X = column_module_X8()
    assert GradedCliffordModule.from_json(X.to_json()).same_as(X)


# ---------------------------------------------------------------- irreducibles

KO_DIMS = {0: 1, 1: 2, 2: 4, 3: 8, 4: 8, 5: 16, 6: 16, 7: 16, 8: 16, 9: 32}


@pytest.mark.parametrize("n", range(0, 10))
def test_irreducible_dimensions(n):
    irr = irreducibles(n, "rational", -1)
    for S in irr:
        assert S.module.dim == KO_DIMS[n]
        assert S.module.relation_defect() is None
    for i, S in enumerate(irr):
        for T in irr[i + 1:]:
            assert hom_dim(S.module, T.module) == 0


def test_decompose_regular_module():
    for n in range(1, 5):
        R = regular_module(NEG(n))
        parts = decompose(R)
        assert sum(S.dim for S in parts) == R.dim
        irr = irreducibles(n, "rational", -1)
        mult = multiplicities(R, irr)
        # S and its parity shift are both listed, so each appears dim(S) / (2 dim End(S)) times
        assert mult == [S.module.dim // (2 * S.end_dim) for S in irr]


def test_gaussian_irreducibles_one_dimensional_endomorphisms():
    for n in range(0, 7):
        assert all(S.end_dim == 1 for S in irreducibles(n, "gaussian", 1))


# ---------------------------------------------------------------- SNF

mats = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(mats)
def test_snf_against_sympy(A):
    U, D, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    ours = [D[i][i] for i in range(min(len(A), len(A[0])))]
    theirs = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    ref = [abs(int(theirs[i, i])) for i in range(min(len(A), len(A[0])))]
    assert sorted(ours) == sorted(ref)


# ---------------------------------------------------------------- ABS

KO_SPHERES = {0: "Z", 1: "Z/2", 2: "Z/2", 3: "0", 4: "Z", 5: "0", 6: "0", 7: "0", 8: "Z", 9: "Z/2", 10: "Z/2"}


@pytest.mark.parametrize("n", range(0, 11))
def test_abs_groups(n):
    assert abs_group(n).description == KO_SPHERES[n]


@pytest.mark.parametrize("n", range(0, 6))
def test_complex_abs_groups(n):
    assert abs_group(n, "gaussian").description == ("Z" if n % 2 == 0 else "0")


@pytest.mark.parametrize("n", [0, 1, 2])
def test_abs_periodicity(n):
    A, B = abs_group(n), abs_group(n + 8)
    assert A.orders == B.orders


def test_abs_class_examples():
    c = abs_class(regular_module(NEG(1)))
    assert c.orders == (2,) and c.coords == (1,)
    x8 = abs_class(column_module_X8())
    assert x8.orders == (0,) and x8.is_generator_of_free_factor()


@pytest.mark.parametrize("n", range(0, 6))
def test_restricted_modules_vanish(n):
    for T in irreducibles(n + 1, "rational", -1):
        assert abs_class(T.module.restrict(n)).is_zero
    for T in irreducibles(n + 1, "gaussian", 1):
        assert abs_class(T.module.restrict(n)).is_zero


def _add(c1, c2):
    return tuple((a + b) % d if d else a + b for a, b, d in zip(c1.coords, c2.coords, c1.orders))


@pytest.mark.parametrize("n", range(0, 6))
def test_abs_additive(n):
    irr = [S.module for S in irreducibles(n, "rational", -1)]
    rng = random.Random(n)
    for _ in range(4):
        M, N = rng.choice(irr), rng.choice(irr)
        assert abs_class(module_direct_sum(M, N)).coords == _add(abs_class(M), abs_class(N))


def test_abs_rejects_wrong_form():
    with pytest.raises(ValidationError):
        abs_class(regular_module(DiagonalForm((1, -1))))
    with pytest.raises(ValidationError):
        abs_class(regular_module(DiagonalForm((1, 1))))


def _complex_modules(n):
    irr = [S.module for S in irreducibles(n, "gaussian", 1)]
    out = list(irr)
    out += [module_direct_sum(a, b) for a in irr for b in irr]
    out += [T.module.restrict(n) for T in irreducibles(n + 1, "gaussian", 1)]
    return out


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("m", [0, 1, 2])
def test_complex_pairing_multiplicative(n, m):
    assert pairing_well_defined(n, m, "gaussian")
    for M in _complex_modules(n):
        for N in _complex_modules(m):
            lhs = abs_class(graded_tensor(M, N))
            rhs = pair_classes(abs_class(M), abs_class(N))
            assert lhs.coords == rhs.coords


def test_bott_class_of_y_squares_to_generator():
    from mfk.knoerrer import y_module

    y = abs_class(y_module())
    assert y.is_generator_of_free_factor()
    assert pair_classes(y, y).is_generator_of_free_factor()
    assert abs_class(graded_tensor(y_module(), y_module())).is_generator_of_free_factor()


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 2), (1, 3)])
def test_real_pairing_well_defined(n, m):
    assert pairing_well_defined(n, m, "rational")
