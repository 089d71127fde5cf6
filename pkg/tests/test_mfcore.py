from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_mf, random_cycle, random_mf
from mfk.errors import MfkError, ValidationError
from mfk.exactalg import Poly, PolyMatrix, WeightSystem, parse_poly
from mfk.homotopy import find_homotopy_equivalence, is_null_homotopic
from mfk.mfcore import (
    F_THEN_ID,
    ID_THEN_F,
    MatrixFactorization,
    MFMorphism,
    apply_basis_map,
    boundary_odd,
    coker_presentation,
    cone,
    direct_sum,
    find_basis_map,
    koszul_of_variables,
    koszul_stabilization,
    rename_vars,
    shift,
    tensor,
    trivial_mf,
    validate,
)
from mfk.mfcore.jsonio import mf_from_json, mf_to_json, morphism_from_json, morphism_to_json
from mfk.mfcore.stripping import strip_trivial_summands


def xy_pair():
    A = make_mf("x*y", [["x"]], [["y"]], weights=(1, 1), degree=2)
    B = make_mf("x*y", [["y"]], [["x"]], weights=(1, 1), degree=2)
    return A, B


def rows(m: PolyMatrix, names):
    return [[p.to_str(names) for p in r] for r in m.rows()]


# ---------------------------------------------------------------- validate

def test_validate_examples():
    A, _ = xy_pair()
    assert validate(A).valid
    Y = make_mf("u^2+v^2", [["u+i*v"]], [["u-i*v"]], vars=("u", "v"), mode="gaussian")
    assert validate(Y).valid
    bad = make_mf("x^2", [["x"]], [["x^2"]], vars=("x",))
    rep = validate(bad)
    assert not rep.valid and "d1*d0" in rep.message


def test_validate_rejects_bad_grading():
    P = make_mf("x*y", [["x"]], [["y"]])
    from mfk.mfcore import Grading

    g = Grading(WeightSystem((1, 1), 2), (0,), (0,))
    Q = MatrixFactorization(P.f, P.d1, P.d0, P.vars, P.mode, g)
    assert not validate(Q).valid


def test_unequal_ranks_only_for_zero_f():
    with pytest.raises(MfkError):
        MatrixFactorization(parse_poly("x", ["x"]), PolyMatrix.zeros(1, 2, 1), PolyMatrix.zeros(2, 1, 1),
                            ("x",), "rational", None)
    P = MatrixFactorization(Poly.zero(1), PolyMatrix.zeros(1, 2, 1), PolyMatrix.zeros(2, 1, 1),
                            ("x",), "rational", None)
    assert validate(P).valid


# ---------------------------------------------------------------- shift / sum / cone

def test_shift_example_and_involution():
    A, _ = xy_pair()
    S = shift(A)
    assert rows(S.d1, A.vars) == [["-y"]] and rows(S.d0, A.vars) == [["-x"]]
    assert shift(S).same_entries(A)
    E = koszul_of_variables(parse_poly("x^2", ["x"]), [parse_poly("x", ["x"])], ["x"])
    assert validate(shift(E)).valid


def test_double_shift_moves_degrees_by_d():
    A, _ = xy_pair()
    SS = shift(shift(A))
    assert SS.grading.deg1 == tuple(a + 2 for a in A.grading.deg1)
    assert SS.grading.deg0 == tuple(a + 2 for a in A.grading.deg0)


def test_direct_sum_blocks():
    A, B = xy_pair()
    S = direct_sum(A, B)
    assert (S.r1, S.r0) == (2, 2)
    assert rows(S.d1, A.vars) == [["x", "0"], ["0", "y"]]
    T = direct_sum(A, trivial_mf(1, ID_THEN_F, A.f, A.vars))
    assert validate(T).valid


def test_cone_of_zero_is_sum_with_shift():
    A, B = xy_pair()
    C = cone(MFMorphism.zero(A, B))
    D = direct_sum(B, shift(A))
    assert C.same_entries(D)


def test_cone_of_identity_is_contractible():
    A, _ = xy_pair()
    C = cone(MFMorphism.identity(A))
    assert validate(C).valid and C.r1 == 2
    assert is_null_homotopic(MFMorphism.identity(C))
    assert strip_trivial_summands(C).mf.rank == 0


def test_cone_rejects_non_cycle():
    A, B = xy_pair()
    n = 2
    alpha = MFMorphism(A, B, PolyMatrix.scalar(1, 1, n), PolyMatrix.scalar(1, 1, n))
    assert not alpha.is_cycle()
    with pytest.raises(MfkError):
        cone(alpha)


def test_cone_grading_needs_degree_zero():
    A, _ = xy_pair()
    x = parse_poly("x", ["x", "y"])
    alpha = MFMorphism(A, A, PolyMatrix.from_rows([[x]], 2), PolyMatrix.from_rows([[x]], 2))
    assert alpha.is_cycle()
    C = cone(alpha)
    assert validate(C).valid and C.grading is None
    assert cone(MFMorphism.identity(A)).grading is not None


# ---------------------------------------------------------------- trivial / tensor

def test_trivial_flavors():
    f = parse_poly("x^2", ["x"])
    P = trivial_mf(1, F_THEN_ID, f, ["x"])
    Q = trivial_mf(1, ID_THEN_F, f, ["x"])
    assert rows(P.d1, ["x"]) == [["x^2"]] and rows(P.d0, ["x"]) == [["1"]]
    assert rows(Q.d1, ["x"]) == [["1"]] and rows(Q.d0, ["x"]) == [["x^2"]]
    assert validate(P).valid and validate(Q).valid


def test_tensor_of_linear_factorizations():
    P = make_mf("x^2", [["x"]], [["x"]], vars=("x",))
    Q = make_mf("y^2", [["y"]], [["y"]], vars=("y",))
    T = tensor(P, Q)
    assert T.f == parse_poly("x^2+y^2", ["x", "y"])
    assert rows(T.d1, T.vars) == [["x", "y"], ["-y", "x"]]
    assert validate(T).valid


def test_tensor_y_with_itself():
    Y = make_mf("u^2+v^2", [["u+i*v"]], [["u-i*v"]], vars=("u", "v"), mode="gaussian")
    T = tensor(Y, rename_vars(Y, ["s", "t"]))
    assert (T.r1, T.r0) == (2, 2) and validate(T).valid
    assert T.f == parse_poly("u^2+v^2+s^2+t^2", ["u", "v", "s", "t"], "gaussian")


def test_tensor_with_contractible_is_contractible():
    P = make_mf("x^2", [["x"]], [["x"]], vars=("x",))
    Z = trivial_mf(1, ID_THEN_F, Poly.zero(1), ["z"])
    T = tensor(P, Z)
    assert validate(T).valid
    assert is_null_homotopic(MFMorphism.identity(T))


def test_tensor_rejects_shared_variables():
    A, B = xy_pair()
    with pytest.raises(ValidationError):
        tensor(A, B)


def test_tensor_associative_up_to_signed_permutation():
    rng = random.Random(5)
    for _ in range(5):
        P = random_mf(rng, 1, ["x"])
        Q = random_mf(rng, 1, ["y"])
        R = random_mf(rng, 1, ["z"])
        left, right = tensor(tensor(P, Q), R), tensor(P, tensor(Q, R))
        bm = find_basis_map(left, right)
        assert apply_basis_map(left, bm).same_entries(right)


def test_tensor_unequal_degrees_ungraded():
    P = make_mf("x^2", [["x"]], [["x"]], vars=("x",), weights=(1,), degree=2)
    Q = make_mf("y^3", [["y"]], [["y^2"]], vars=("y",), weights=(1,), degree=3)
    T = tensor(P, Q)
    assert validate(T).valid and T.grading is None


# ---------------------------------------------------------------- Koszul

def test_koszul_small():
    E = koszul_of_variables(parse_poly("x^2", ["x"]), [parse_poly("x", ["x"])], ["x"])
    assert rows(E.d1, ["x"]) == [["x"]] and rows(E.d0, ["x"]) == [["x"]]
    names = ["x", "y"]
    E2 = koszul_of_variables(parse_poly("x^2+y^2", names), [parse_poly(v, names) for v in names], names)
    assert (E2.r1, E2.r0) == (2, 2) and validate(E2).valid


@pytest.mark.parametrize("n", range(1, 7))
def test_koszul_rank_law(n):
    names = [f"x{i}" for i in range(1, n + 1)]
    f = parse_poly("+".join(f"{v}^2" for v in names), names)
    E = koszul_of_variables(f, [parse_poly(v, names) for v in names], names, weights=WeightSystem((1,) * n, 2))
    assert E.r1 == E.r0 == 2 ** (n - 1)
    assert validate(E).valid


def test_koszul_rejects_wrong_decomposition():
    names = ["x", "y"]
    with pytest.raises(MfkError):
        koszul_stabilization(parse_poly("x*y", names), [(parse_poly("x", names), parse_poly("x", names))], names)


def test_koszul_general_pairs():
    names = ["x", "y"]
    f = parse_poly("x^3 - y^2", names)
    E = koszul_stabilization(f, [(parse_poly("x^2", names), parse_poly("x", names)),
                                 (parse_poly("-y", names), parse_poly("y", names))], names)
    assert validate(E).valid and E.r1 == 2


# ---------------------------------------------------------------- coker / strip

def test_coker_presentation():
    A, _ = xy_pair()
    assert rows(coker_presentation(A), A.vars) == [["x"]]
    T = trivial_mf(1, ID_THEN_F, A.f, A.vars)
    assert rows(coker_presentation(T), A.vars) == [["1"]]


def test_strip_examples():
    A, _ = xy_pair()
    S = direct_sum(A, trivial_mf(1, F_THEN_ID, A.f, A.vars))
    res = strip_trivial_summands(S)
    assert res.mf.rank == A.rank and res.mf.same_entries(A)
    assert strip_trivial_summands(trivial_mf(3, ID_THEN_F, A.f, A.vars)).mf.rank == 0


def _no_units(P):
    return not any(p.is_unit() for m in (P.d1, P.d0) for p in m.entries.values())


def test_strip_certificate_identities():
    rng = random.Random(11)
    for _ in range(6):
        P = random_mf(rng)
        T = direct_sum(P, trivial_mf(1, rng.choice([F_THEN_ID, ID_THEN_F]), P.f, P.vars))
        res = strip_trivial_summands(T)
        assert _no_units(res.mf)
        a, b = res.alpha, res.beta
        assert a.is_cycle() and b.is_cycle()
        n = T.nvars
        ab1 = a.a1 @ b.a1
        assert ab1 == PolyMatrix.identity(res.mf.r1, n)
        dh = boundary_odd(res.h)
        assert b.a1 @ a.a1 - PolyMatrix.identity(T.r1, n) == dh.a1
        assert b.a0 @ a.a0 - PolyMatrix.identity(T.r0, n) == dh.a0


def test_strip_result_homotopy_equivalent():
    A, _ = xy_pair()
    S = direct_sum(A, trivial_mf(1, F_THEN_ID, A.f, A.vars))
    res = strip_trivial_summands(S)
    cert = find_homotopy_equivalence(S.without_grading(), res.mf.without_grading())
    assert cert is not None and cert.verify()


# ---------------------------------------------------------------- JSON

def test_json_round_trip():
    rng = random.Random(2)
    for _ in range(10):
        P = random_mf(rng, 3)
        assert mf_from_json(mf_to_json(P)).same_entries(P)
    A, _ = xy_pair()
    back = mf_from_json(mf_to_json(A))
    assert back.grading == A.grading
    alpha = MFMorphism.identity(A)
    assert morphism_from_json(morphism_to_json(alpha), A, A).a1 == alpha.a1


def test_json_errors():
    with pytest.raises(ValidationError):
        mf_from_json({"vars": ["x"], "f": "x"})
    with pytest.raises(ValidationError):
        mf_from_json({"vars": ["x"], "f": "x", "d1": [["x"]], "d0": [["1"]], "mode": "padic"})


# ---------------------------------------------------------------- fuzz

@given(st.integers(0, 10 ** 6))
def test_random_constructions_validate(seed):
    rng = random.Random(seed)
    nv = rng.randint(1, 3)
    P = random_mf(rng, nv)
    Q = random_mf(rng, nv)
    Q = MatrixFactorization(P.f, P.d1, P.d0, P.vars, P.mode, None) if rng.random() < 0.5 else \
        direct_sum(P, trivial_mf(1, F_THEN_ID, P.f, P.vars))
    alpha = random_cycle(rng, P, Q)
    assert alpha.is_cycle()
    for X in (shift(P), direct_sum(P, Q), cone(alpha), tensor(P, rename_vars(Q, [v + "_" for v in Q.vars]))):
        assert validate(X).valid
