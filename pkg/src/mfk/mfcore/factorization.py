"""Matrix factorizations, morphisms between them, and validation."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from ..errors import ValidationError
from ..exactalg.grading import WeightSystem, is_quasi_homogeneous, weighted_degree
from ..exactalg.matrix import PolyMatrix
from ..exactalg.poly import Poly
from ..exactalg.scalars import MODES, RATIONAL


def base_labels(parity: int, n: int) -> tuple:
    return tuple(((parity, i),) for i in range(n))


@dataclass(frozen=True)
class Grading:
    """Generator degrees: d1[i,j] has degree deg0[i]-deg1[j], d0[i,j] has deg1[i]-deg0[j]+d."""

    weights: WeightSystem
    deg1: tuple
    deg0: tuple

    def __post_init__(self):
        object.__setattr__(self, "deg1", tuple(int(x) for x in self.deg1))
        object.__setattr__(self, "deg0", tuple(int(x) for x in self.deg0))

    @property
    def d(self) -> int:
        return self.weights.degree


@dataclass(frozen=True, eq=False)
class MatrixFactorization:
    """(d1: P1 -> P0, d0: P0 -> P1) with d1*d0 = d0*d1 = f*I.

    Matrices act on column vectors.  ``d1`` is r0 x r1 and ``d0`` is r1 x r0.
    """

    f: Poly
    d1: PolyMatrix
    d0: PolyMatrix
    vars: tuple
    mode: str = RATIONAL
    grading: Optional[Grading] = None
    labels1: Optional[tuple] = None
    labels0: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        n = len(self.vars)
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}")
        if len(set(self.vars)) != n:
            raise ValidationError("duplicate variable names")
        if self.f.nvars != n or self.d1.nvars != n or self.d0.nvars != n:
            raise ValidationError("f, d1, d0 must live over the declared variables")
        r0, r1 = self.d1.shape
        if self.d0.shape != (r1, r0):
            raise ValidationError(
                f"dimension mismatch: d1 is {self.d1.shape}, d0 is {self.d0.shape}"
            )
        if self.f and r0 != r1:
            raise ValidationError("for f != 0 both halves must have the same rank")
        if self.mode == RATIONAL:
            polys = [self.f, *self.d1.entries.values(), *self.d0.entries.values()]
            if any(p.has_gaussian_coefficients() for p in polys):
                raise ValidationError("gaussian coefficient in a rational-mode factorization")
        if self.labels1 is None:
            object.__setattr__(self, "labels1", base_labels(1, r1))
        if self.labels0 is None:
            object.__setattr__(self, "labels0", base_labels(0, r0))
        if len(self.labels1) != r1 or len(self.labels0) != r0:
            raise ValidationError("basis label count does not match rank")
        g = self.grading
        if g is not None:
            if g.weights.nvars != n:
                raise ValidationError("grading weights do not match the variable count")
            if len(g.deg1) != r1 or len(g.deg0) != r0:
                raise ValidationError("degree vectors do not match the ranks")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def r1(self) -> int:
        return self.d1.ncols

    @property
    def r0(self) -> int:
        return self.d1.nrows

    @property
    def rank(self) -> int:
        """Half-rank (rank of P1; equals rank of P0 when f != 0)."""
        return self.r1

    def same_entries(self, other: "MatrixFactorization") -> bool:
        return (self.vars == other.vars and self.f == other.f
                and self.d1 == other.d1 and self.d0 == other.d0)

    def without_grading(self) -> "MatrixFactorization":
        return replace(self, grading=None)

    def with_labels(self, labels1, labels0) -> "MatrixFactorization":
        return replace(self, labels1=tuple(labels1), labels0=tuple(labels0))

    def max_entry_degree(self) -> int:
        return max(self.d1.max_degree(), self.d0.max_degree(), 0)

    def __repr__(self):
        return f"MatrixFactorization(rank={self.r1}|{self.r0}, vars={self.vars}, f={self.f.to_str(self.vars)})"


@dataclass(frozen=True, eq=False)
class MFMorphism:
    """An even map (a1: P1 -> P1', a0: P0 -> P0')."""

    source: MatrixFactorization
    target: MatrixFactorization
    a1: PolyMatrix
    a0: PolyMatrix

    def __post_init__(self):
        s, t = self.source, self.target
        if s.vars != t.vars or s.f != t.f:
            raise ValidationError("morphism between factorizations of different f or variables")
        if self.a1.shape != (t.r1, s.r1) or self.a0.shape != (t.r0, s.r0):
            raise ValidationError("morphism blocks have the wrong shape")

    def cycle_defect(self):
        """Return None if a cycle, else a description of the failing square."""
        s, t = self.source, self.target
        if (self.a0 @ s.d1) != (t.d1 @ self.a1):
            return "a0*d1 != d1'*a1"
        if (self.a1 @ s.d0) != (t.d0 @ self.a0):
            return "a1*d0 != d0'*a0"
        return None

    def is_cycle(self) -> bool:
        return self.cycle_defect() is None

    @classmethod
    def identity(cls, P: MatrixFactorization) -> "MFMorphism":
        return cls(P, P, PolyMatrix.identity(P.r1, P.nvars), PolyMatrix.identity(P.r0, P.nvars))

    @classmethod
    def zero(cls, P: MatrixFactorization, Q: MatrixFactorization) -> "MFMorphism":
        n = P.nvars
        return cls(P, Q, PolyMatrix.zeros(Q.r1, P.r1, n), PolyMatrix.zeros(Q.r0, P.r0, n))


@dataclass
class ValidationReport:
    valid: bool
    message: str
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"valid": self.valid, "message": self.message, "checks": self.checks}


def _grading_violation(P: MatrixFactorization):
    g = P.grading
    w, d = g.weights, g.d
    if not is_quasi_homogeneous(P.f, w):
        return "f is not quasi-homogeneous of the declared degree"
    for (i, j), p in P.d1.entries.items():
        want = g.deg0[i] - g.deg1[j]
        if any(weighted_degree(e, w) != want for e in p.terms):
            return f"d1[{i},{j}] is not homogeneous of degree {want}"
    for (i, j), p in P.d0.entries.items():
        want = g.deg1[i] - g.deg0[j] + d
        if any(weighted_degree(e, w) != want for e in p.terms):
            return f"d0[{i},{j}] is not homogeneous of degree {want}"
    return None


def validate(P: MatrixFactorization) -> ValidationReport:
    checks = {}
    names = P.vars
    for name, prod in (("d1*d0", P.d1 @ P.d0), ("d0*d1", P.d0 @ P.d1)):
        ok = prod.is_scalar_multiple_of_identity(P.f)
        checks[name] = ok
        if not ok:
            target = PolyMatrix.scalar(prod.nrows, P.f, P.nvars)
            i, j = prod.first_difference(target)
            got = prod[i, j].to_str(names)
            want = target[i, j].to_str(names)
            return ValidationReport(False, f"{name}[{i},{j}] = {got}, expected {want}", checks)
    if P.grading is not None:
        bad = _grading_violation(P)
        checks["graded"] = bad is None
        if bad:
            return ValidationReport(False, bad, checks)
    return ValidationReport(True, "valid", checks)


def is_valid(P: MatrixFactorization) -> bool:
    return validate(P).valid


@dataclass(frozen=True)
class BasisMap:
    """Signed permutation: basis vector a of A goes to sign[a] * (basis vector perm[a] of B)."""

    perm1: tuple
    sign1: tuple
    perm0: tuple
    sign0: tuple

    def all_positive(self) -> bool:
        return all(s == 1 for s in self.sign1 + self.sign0)


def _match(la: Sequence, lb: Sequence) -> tuple:
    where = {lab: k for k, lab in enumerate(lb)}
    if len(where) != len(lb) or len(la) != len(lb):
        raise ValidationError("basis labels are not a bijection")
    try:
        return tuple(where[lab] for lab in la)
    except KeyError as exc:
        raise ValidationError(f"label {exc.args[0]!r} has no partner") from None


def find_basis_map(A: MatrixFactorization, B: MatrixFactorization) -> BasisMap:
    """Match bases by label, solve for signs, and verify B = S A S^-1 exactly."""
    if A.vars != B.vars or A.f != B.f:
        raise ValidationError("factorizations differ in f or variables")
    p1 = _match(A.labels1, B.labels1)
    p0 = _match(A.labels0, B.labels0)
    sign = {}
    adj: dict = {}
    for mat_a, mat_b, rp, cp, rpar, cpar in ((A.d1, B.d1, p0, p1, 0, 1), (A.d0, B.d0, p1, p0, 1, 0)):
        for (i, j), p in mat_a.entries.items():
            q = mat_b[rp[i], cp[j]]
            if q == p:
                s = 1
            elif q == -p:
                s = -1
            else:
                raise ValidationError(f"entries at ({i},{j}) differ beyond a sign")
            adj.setdefault((rpar, i), []).append(((cpar, j), s))
            adj.setdefault((cpar, j), []).append(((rpar, i), s))
    for start in [(1, a) for a in range(A.r1)] + [(0, a) for a in range(A.r0)]:
        if start in sign:
            continue
        sign[start] = 1
        todo = deque([start])
        while todo:
            u = todo.popleft()
            for v, s in adj.get(u, ()):
                want = sign[u] * s
                if v not in sign:
                    sign[v] = want
                    todo.append(v)
                elif sign[v] != want:
                    raise ValidationError("no consistent sign assignment")
    bm = BasisMap(p1, tuple(sign[(1, a)] for a in range(A.r1)), p0, tuple(sign[(0, a)] for a in range(A.r0)))
    if apply_basis_map(A, bm, B.labels1, B.labels0).same_entries(B):
        return bm
    raise ValidationError("basis map does not intertwine the differentials")


def _signed_perm_apply(M: PolyMatrix, rp, rs, cp, cs, nrows, ncols) -> PolyMatrix:
    out = {}
    for (i, j), p in M.entries.items():
        out[(rp[i], cp[j])] = p if rs[i] * cs[j] == 1 else -p
    return PolyMatrix(nrows, ncols, M.nvars, out)


def apply_basis_map(A: MatrixFactorization, bm: BasisMap, labels1=None, labels0=None) -> MatrixFactorization:
    d1 = _signed_perm_apply(A.d1, bm.perm0, bm.sign0, bm.perm1, bm.sign1, A.r0, A.r1)
    d0 = _signed_perm_apply(A.d0, bm.perm1, bm.sign1, bm.perm0, bm.sign0, A.r1, A.r0)
    return MatrixFactorization(A.f, d1, d0, A.vars, A.mode, None, labels1, labels0)


@dataclass(frozen=True, eq=False)
class OddMap:
    """An odd map (b1: P1 -> P0', b0: P0 -> P1')."""

    source: MatrixFactorization
    target: MatrixFactorization
    b1: PolyMatrix
    b0: PolyMatrix

    def __post_init__(self):
        s, t = self.source, self.target
        if self.b1.shape != (t.r0, s.r1) or self.b0.shape != (t.r1, s.r0):
            raise ValidationError("odd map blocks have the wrong shape")

    @classmethod
    def zero(cls, P: MatrixFactorization, Q: MatrixFactorization) -> "OddMap":
        n = P.nvars
        return cls(P, Q, PolyMatrix.zeros(Q.r0, P.r1, n), PolyMatrix.zeros(Q.r1, P.r0, n))


def boundary_even(alpha: MFMorphism) -> OddMap:
    """d' a - a d for an even map a."""
    s, t = alpha.source, alpha.target
    return OddMap(s, t, t.d1 @ alpha.a1 - alpha.a0 @ s.d1, t.d0 @ alpha.a0 - alpha.a1 @ s.d0)


def boundary_odd(h: OddMap) -> MFMorphism:
    """d' h + h d for an odd map h."""
    s, t = h.source, h.target
    return MFMorphism(s, t, t.d0 @ h.b1 + h.b0 @ s.d1, t.d1 @ h.b0 + h.b1 @ s.d0)


def compose(beta: MFMorphism, alpha: MFMorphism) -> MFMorphism:
    """beta after alpha."""
    return MFMorphism(alpha.source, beta.target, beta.a1 @ alpha.a1, beta.a0 @ alpha.a0)


def subtract(a: MFMorphism, b: MFMorphism) -> MFMorphism:
    return MFMorphism(a.source, a.target, a.a1 - b.a1, a.a0 - b.a0)


def morphisms_equal(a: MFMorphism, b: MFMorphism) -> bool:
    return a.a1 == b.a1 and a.a0 == b.a0
