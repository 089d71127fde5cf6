"""ABS groups A_n = M(C_n) / restrictions from C_{n+1}, presented by Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import MfkError, ValidationError
from ..exactalg.scalars import GAUSSIAN, RATIONAL
from .irreducibles import irreducibles, multiplicities
from .modules import GradedCliffordModule, graded_tensor
from .snf import smith_normal_form


def default_sign(mode: str) -> int:
    """Rational mode uses -sum x^2; gaussian mode uses +sum x^2 (equivalent over Q(i))."""
    return 1 if mode == GAUSSIAN else -1


def _inverse(V: list) -> list:
    n = len(V)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c])
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                k = A[r][c]
                A[r] = [x - k * y for x, y in zip(A[r], A[c])]
    out = [[int(x) for x in row[n:]] for row in A]
    assert all(x == int(x) for row in A for x in row[n:]), "transform not unimodular"
    return out


def _describe(orders: tuple) -> str:
    if not orders:
        return "0"
    return " + ".join("Z" if d == 0 else f"Z/{d}" for d in orders)


@dataclass(frozen=True, eq=False)
class AbsGroup:
    n: int
    mode: str
    sign: int
    irreducibles: tuple
    restriction: tuple  # rows: restricted C_{n+1} irreducibles, cols: C_n irreducibles
    V: tuple
    Vinv: tuple
    orders: tuple  # one entry per kept coordinate; 0 marks a free factor
    kept: tuple  # SNF coordinates that survive (d_i != 1)

    @property
    def description(self) -> str:
        return _describe(self.orders)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.orders if d == 0)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.orders if d)

    def reduce(self, mult: list) -> tuple:
        full = [sum(m * self.V[i][j] for i, m in enumerate(mult)) for j in range(len(mult))]
        return tuple(full[k] % d if d else full[k] for k, d in zip(self.kept, self.orders))

    def lift(self, coords: tuple) -> list:
        """A multiplicity vector (possibly with negative entries) representing coords."""
        full = [0] * len(self.irreducibles)
        for k, c in zip(self.kept, coords):
            full[k] = c
        return [sum(full[j] * self.Vinv[j][i] for j in range(len(full))) for i in range(len(full))]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "group": self.description,
            "factors": list(self.orders),
            "irreducible_dims": [[T.module.m1, T.module.m0] for T in self.irreducibles],
            "restriction_matrix": [list(r) for r in self.restriction],
        }


@lru_cache(maxsize=None)
def abs_group(n: int, mode: str = RATIONAL, sign: int | None = None) -> AbsGroup:
    """Compute A_n from the irreducibles of C_n and C_{n+1}."""
    if sign is None:
        sign = default_sign(mode)
    irr = irreducibles(n, mode, sign)
    up = irreducibles(n + 1, mode, sign)
    R = [multiplicities(T.module.restrict(n), irr) for T in up]
    U, D, V = smith_normal_form(R)
    diag = [D[i][i] if i < len(D) else 0 for i in range(len(irr))]
    kept = tuple(i for i, d in enumerate(diag) if d != 1)
    orders = tuple(diag[i] for i in kept)
    return AbsGroup(n, mode, sign, irr, tuple(map(tuple, R)), tuple(map(tuple, V)),
                    tuple(map(tuple, _inverse(V))), orders, kept)


@dataclass(frozen=True)
class AbsClass:
    n: int
    mode: str
    orders: tuple
    coords: tuple

    @property
    def group(self) -> str:
        return _describe(self.orders)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_generator_of_free_factor(self) -> bool:
        """True when the class is +-1 on one free factor and zero elsewhere."""
        nonzero = [(c, d) for c, d in zip(self.coords, self.orders) if c]
        return len(nonzero) == 1 and nonzero[0][1] == 0 and abs(nonzero[0][0]) == 1

    def to_dict(self) -> dict:
        return {"n": self.n, "mode": self.mode, "group": self.group,
                "factors": list(self.orders), "coords": list(self.coords), "zero": self.is_zero}


def _sign_of(M: GradedCliffordModule) -> int | None:
    coeffs = set(M.form.coeffs)
    if not coeffs:
        return None
    if len(coeffs) != 1 or coeffs.pop() not in (1, -1):
        raise ValidationError("ABS classes need a form with all coefficients equal to +1 or all -1")
    return M.form.coeffs[0]


def abs_class(M: GradedCliffordModule) -> AbsClass:
    """Class of M in A_n."""
    problem = M.relation_defect()
    if problem:
        raise ValidationError(problem)
    sign = _sign_of(M)
    if sign is not None and M.form.mode == RATIONAL and sign != -1:
        raise ValidationError("rational-mode ABS classes use C_n = Cliff(-sum x_i^2)")
    G = abs_group(M.n, M.form.mode, sign if sign is not None else default_sign(M.form.mode))
    coords = G.reduce(multiplicities(M, G.irreducibles))
    return AbsClass(M.n, M.form.mode, G.orders, coords)


# ------------------------------------------------------------------ pairing

@lru_cache(maxsize=None)
def _pairing_table(n: int, m: int, mode: str, sign: int) -> tuple:
    A, B = abs_group(n, mode, sign), abs_group(m, mode, sign)
    table = []
    for S in A.irreducibles:
        row = []
        for T in B.irreducibles:
            row.append(abs_class(graded_tensor(S.module, T.module)).coords)
        table.append(tuple(row))
    return tuple(table)


def pair_classes(x: AbsClass, y: AbsClass) -> AbsClass:
    """Product A_n x A_m -> A_{n+m}, computed on multiplicity lifts."""
    if x.mode != y.mode:
        raise MfkError("cannot pair classes from different modes")
    sign = default_sign(x.mode)
    A, B = abs_group(x.n, x.mode, sign), abs_group(y.n, y.mode, sign)
    C = abs_group(x.n + y.n, x.mode, sign)
    table = _pairing_table(x.n, y.n, x.mode, sign)
    u, v = A.lift(x.coords), B.lift(y.coords)
    acc = [0] * len(C.orders)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            if a and b:
                acc = [s + a * b * t for s, t in zip(acc, table[i][j])]
    coords = tuple(c % d if d else c for c, d in zip(acc, C.orders))
    return AbsClass(C.n, C.mode, C.orders, coords)


def pairing_well_defined(n: int, m: int, mode: str = RATIONAL) -> bool:
    """Products with restricted modules vanish, so the pairing descends to A_n x A_m."""
    sign = default_sign(mode)
    A, B = abs_group(n, mode, sign), abs_group(m, mode, sign)
    table = _pairing_table(n, m, mode, sign)
    C = abs_group(n + m, mode, sign)

    def vanish(vec_left, vec_right):
        acc = [0] * len(C.orders)
        for i, a in enumerate(vec_left):
            for j, b in enumerate(vec_right):
                acc = [s + a * b * t for s, t in zip(acc, table[i][j])]
        return all((c % d if d else c) == 0 for c, d in zip(acc, C.orders))

    units_b = [[int(i == j) for i in range(len(B.irreducibles))] for j in range(len(B.irreducibles))]
    units_a = [[int(i == j) for i in range(len(A.irreducibles))] for j in range(len(A.irreducibles))]
    return all(vanish(r, e) for r in A.restriction for e in units_b) and \
        all(vanish(e, r) for e in units_a for r in B.restriction)
