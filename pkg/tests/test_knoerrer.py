from __future__ import annotations

import random

import pytest

from conftest import make_mf, random_mf
from mfk.clifford import irreducibles, module_direct_sum
from mfk.errors import ValidationError
from mfk.exactalg import parse_poly
from mfk.knoerrer import (
    fresh_names,
    knorrer_complex,
    knorrer_real8,
    knorrer_report,
    verify_periodicity_diagram_quadratic,
    verify_y_endomorphisms,
    x8_factorization,
    y_factorization,
)
from mfk.mfcore import (
    ID_THEN_F,
    MatrixFactorization,
    MFMorphism,
    apply_basis_map,
    cone,
    find_basis_map,
    tensor_morphism_identity,
    trivial_mf,
    validate,
)
from mfk.mfcore.stripping import strip_trivial_summands
from mfk.mfcore.factorization import boundary_odd, OddMap
from mfk.exactalg import PolyMatrix


def gaussian(P: MatrixFactorization) -> MatrixFactorization:
    return MatrixFactorization(P.f, P.d1, P.d0, P.vars, "gaussian", P.grading)


def test_complex_example():
    P = make_mf("x^2+y^2", [["x+i*y"]], [["x-i*y"]], mode="gaussian")
    K = knorrer_complex(P)
    assert (K.r1, K.r0) == (2, 2)
    assert K.f == parse_poly("x^2+y^2+u^2+v^2", ["x", "y", "u", "v"], "gaussian")
    assert validate(K).valid


def test_complex_trivial_input_stays_contractible():
    P = trivial_mf(1, ID_THEN_F, parse_poly("x^2", ["x"], "gaussian"), ["x"], "gaussian")
    K = knorrer_complex(P)
    assert strip_trivial_summands(K).mf.rank == 0


@pytest.mark.parametrize("seed", range(8))
def test_rank_multipliers(seed):
    rng = random.Random(seed)
    P = random_mf(rng, 2)
    K = knorrer_complex(gaussian(P))
    R = knorrer_real8(P)
    assert validate(K).valid and validate(R).valid
    assert K.r1 == 2 * P.r1 and R.r1 == 16 * P.r1
    names = P.vars + tuple(f"u{i}" for i in range(1, 9))
    quad = parse_poly(" + ".join(f"u{i}^2" for i in range(1, 9)), names)
    assert R.f == P.f.embed(0, len(names)) - quad


def test_mode_errors():
    P = make_mf("x*y", [["x"]], [["y"]])
    with pytest.raises(ValidationError):
        knorrer_complex(P)
    with pytest.raises(ValidationError):
        knorrer_real8(gaussian(P))


def test_real8_example_and_grading():
    P = make_mf("x^2", [["x"]], [["x"]], vars=("x",), weights=(1,), degree=2)
    R = knorrer_real8(P)
    assert R.r1 == 16 and validate(R).valid
    names = ("x",) + tuple(f"u{i}" for i in range(1, 9))
    assert R.f == parse_poly("x^2 - " + " - ".join(f"u{i}^2" for i in range(1, 9)), names)
    assert R.grading is not None and R.grading.weights.weights == (1,) * 9
    Q = make_mf("x^3", [["x"]], [["x^2"]], vars=("x",), weights=(1,), degree=3)
    out, rep = knorrer_report(Q, "real8")
    assert out.grading is None and not rep.graded and rep.valid
    Pw = make_mf("x^4", [["x^2"]], [["x^2"]], vars=("x",), weights=(1,), degree=4)
    assert knorrer_real8(Pw).grading.weights.weights == (1,) + (2,) * 8


def test_positive_variant():
    P = make_mf("x^2", [["x"]], [["x"]], vars=("x",))
    R = knorrer_real8(P, positive=True)
    assert validate(R).valid
    names = ("x",) + tuple(f"u{i}" for i in range(1, 9))
    assert R.f == parse_poly("x^2 + " + " + ".join(f"u{i}^2" for i in range(1, 9)), names)


def test_fresh_names():
    assert fresh_names(("u", "v"), ["x"]) == ("u", "v")
    assert fresh_names(("u", "v"), ["u", "x"]) == ("u_1", "v_1")
    P = make_mf("u^2+v^2", [["u+i*v"]], [["u-i*v"]], vars=("u", "v"), mode="gaussian")
    K = knorrer_complex(P)
    assert K.vars == ("u", "v", "u_1", "v_1") and validate(K).valid


def _shifted_identity(P, rng):
    """Identity plus a random boundary: a cycle homotopic to the identity."""
    n = P.nvars
    h = OddMap(P, P, PolyMatrix.scalar(P.r0, rng.randint(-2, 2), n),
               PolyMatrix.scalar(P.r1, rng.randint(-2, 2), n))
    b = boundary_odd(h)
    return MFMorphism(P, P, b.a1 + PolyMatrix.identity(P.r1, n), b.a0 + PolyMatrix.identity(P.r0, n))


@pytest.mark.parametrize("kind", ["complex", "real8"])
def test_functoriality_and_cones(kind):
    rng = random.Random(3)
    for _ in range(3):
        P = make_mf("x^2-x", [["x"]], [["x-1"]], vars=("x",))
        if kind == "complex":
            P, X, F = gaussian(P), y_factorization(("u", "v")), knorrer_complex
        else:
            X, F = x8_factorization(), knorrer_real8
        alpha = _shifted_identity(P, rng)
        assert alpha.is_cycle()
        ax = tensor_morphism_identity(alpha, X)
        assert ax.is_cycle()
        left = F(cone(alpha)).without_grading()
        right = cone(ax).without_grading()
        bm = find_basis_map(left, right)
        assert apply_basis_map(left, bm).same_entries(right)


def test_y_endomorphisms():
    rep = verify_y_endomorphisms()
    assert (rep.h0, rep.h1) == (1, 0) and rep.passed


def test_complex_diagram_small():
    for n in range(0, 3):
        mods = [S.module for S in irreducibles(n, "gaussian", 1)]
        mods += [module_direct_sum(mods[0], mods[-1])]
        mods += [T.module.restrict(n) for T in irreducibles(n + 1, "gaussian", 1)]
        for M in mods:
            rep = verify_periodicity_diagram_quadratic(M)
            assert rep.passed, rep.to_dict()


def test_restricted_zero_maps_to_zero():
    T = irreducibles(2, "gaussian", 1)[0].module
    rep = verify_periodicity_diagram_quadratic(T.restrict(1))
    assert rep.input_class["zero"] and rep.output_class["zero"]
