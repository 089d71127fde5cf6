"""Z/2-graded Clifford modules and the functor to matrix factorizations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence

from ..errors import MfkError
from ..exactalg.grading import WeightSystem
from ..exactalg.matrix import PolyMatrix
from ..exactalg.poly import Poly
from ..exactalg.scalars import GAUSSIAN, RATIONAL, parse_scalar, scalar_to_json
from ..exactalg.smatrix import SMat, sblock, skron
from ..mfcore.factorization import Grading, MatrixFactorization
from .algebra import DiagonalForm, blade_product


@dataclass(frozen=True, eq=False)
class GradedCliffordModule:
    """Generator e_i acts by up[i]: V1 -> V0 (m0 x m1) and down[i]: V0 -> V1 (m1 x m0)."""

    form: DiagonalForm
    m1: int
    m0: int
    up: tuple
    down: tuple

    def __post_init__(self):
        object.__setattr__(self, "up", tuple(self.up))
        object.__setattr__(self, "down", tuple(self.down))
        n = self.form.n
        if len(self.up) != n or len(self.down) != n:
            raise MfkError("need one (up, down) pair per generator")
        for u, d in zip(self.up, self.down):
            if u.shape != (self.m0, self.m1) or d.shape != (self.m1, self.m0):
                raise MfkError("action matrix has the wrong shape")

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def dim(self) -> int:
        return self.m0 + self.m1

    def relation_defect(self) -> Optional[str]:
        """None if all Clifford relations hold, else the first failing one."""
        a = self.form.coeffs
        I0, I1 = SMat.identity(self.m0), SMat.identity(self.m1)
        for i in range(self.n):
            if self.down[i] @ self.up[i] != I1.scale(a[i]) or self.up[i] @ self.down[i] != I0.scale(a[i]):
                return f"e{i + 1}^2 != {a[i]}"
        for i in range(self.n):
            for j in range(i + 1, self.n):
                s0 = self.up[i] @ self.down[j] + self.up[j] @ self.down[i]
                s1 = self.down[i] @ self.up[j] + self.down[j] @ self.up[i]
                if not (s0.is_zero() and s1.is_zero()):
                    return f"e{i + 1} and e{j + 1} do not anticommute"
        return None

    def check(self) -> "GradedCliffordModule":
        bad = self.relation_defect()
        if bad:
            raise MfkError(f"Clifford relation violated: {bad}")
        return self

    def same_as(self, other: "GradedCliffordModule") -> bool:
        return (self.form == other.form and self.m1 == other.m1 and self.m0 == other.m0
                and self.up == other.up and self.down == other.down)

    def parity_shift(self) -> "GradedCliffordModule":
        return GradedCliffordModule(self.form, self.m0, self.m1, self.down, self.up)

    def restrict(self, k: int) -> "GradedCliffordModule":
        """Restriction along the inclusion of the first k generators."""
        form = DiagonalForm(self.form.coeffs[:k], self.form.mode)
        return GradedCliffordModule(form, self.m1, self.m0, self.up[:k], self.down[:k])

    def action(self, i: int) -> SMat:
        """Full action of e_i on V0 + V1 (even coordinates first)."""
        return sblock([[SMat.zeros(self.m0, self.m0), self.up[i]],
                       [self.down[i], SMat.zeros(self.m1, self.m1)]])

    def to_json(self) -> dict:
        def mat(m):
            return [[scalar_to_json(v) for v in row] for row in m.to_dense()]
        return {
            "n": self.n, "mode": self.form.mode,
            "form": [scalar_to_json(a) for a in self.form.coeffs],
            "m1": self.m1, "m0": self.m0,
            "rho": [{"up": mat(u), "down": mat(d)} for u, d in zip(self.up, self.down)],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GradedCliffordModule":
        coeffs = [parse_scalar(a) for a in doc["form"]]
        mode = doc.get("mode") or (GAUSSIAN if any(not isinstance(c, int) for c in coeffs) else RATIONAL)
        form = DiagonalForm(tuple(coeffs), mode)
        if "n" in doc and doc["n"] != form.n:
            raise MfkError("n does not match the form")
        m1, m0 = int(doc["m1"]), int(doc["m0"])

        def mat(rows, r, c):
            if r == 0 or c == 0:
                return SMat.zeros(r, c)
            return SMat.from_dense([[parse_scalar(v) for v in row] for row in rows], c)

        rho = doc["rho"]
        up = [mat(g["up"], m0, m1) for g in rho]
        down = [mat(g["down"], m1, m0) for g in rho]
        for m, shape in [(u, (m0, m1)) for u in up] + [(d, (m1, m0)) for d in down]:
            if m.shape != shape:
                raise MfkError("action matrix has the wrong shape")
        return cls(form, m1, m0, up, down)


def module_direct_sum(M: GradedCliffordModule, N: GradedCliffordModule) -> GradedCliffordModule:
    if M.form != N.form:
        raise MfkError("modules over different forms")
    z = SMat.zeros
    up = [sblock([[u, z(M.m0, N.m1)], [z(N.m0, M.m1), v]]) for u, v in zip(M.up, N.up)]
    down = [sblock([[u, z(M.m1, N.m0)], [z(N.m1, M.m0), v]]) for u, v in zip(M.down, N.down)]
    return GradedCliffordModule(M.form, M.m1 + N.m1, M.m0 + N.m0, up, down)


def regular_module(q: DiagonalForm) -> GradedCliffordModule:
    """Cliff(q) acting on itself by left multiplication."""
    n = q.n
    odd = [S for S in range(1 << n) if bin(S).count("1") % 2]
    even = [S for S in range(1 << n) if not bin(S).count("1") % 2]
    pos = {S: k for k, S in enumerate(odd)}
    pos.update({S: k for k, S in enumerate(even)})
    up, down = [], []
    for i in range(n):
        u, d = {}, {}
        for S in range(1 << n):
            T, c = blade_product(1 << i, S, q)
            dst = u if S in odd_set(n) else d
            dst.setdefault(pos[T], {})[pos[S]] = c
        up.append(SMat(len(even), len(odd), u))
        down.append(SMat(len(odd), len(even), d))
    return GradedCliffordModule(q, len(odd), len(even), up, down)


def odd_set(n: int, _cache={}):
    s = _cache.get(n)
    if s is None:
        s = _cache[n] = frozenset(S for S in range(1 << n) if bin(S).count("1") % 2)
    return s


def default_names(n: int, stem: str = "x") -> tuple:
    return tuple(f"{stem}{i + 1}" for i in range(n))


def beh_theta(M: GradedCliffordModule, names: Optional[Sequence[str]] = None) -> MatrixFactorization:
    """d1 = sum x_i up_i, d0 = sum x_i down_i, a factorization of q."""
    M.check()
    n = M.n
    names = tuple(names) if names is not None else default_names(n)
    if len(names) != n:
        raise MfkError("need one variable name per generator")
    f = Poly.zero(n)
    for i, a in enumerate(M.form.coeffs):
        f = f + Poly.var(i, n) * Poly.var(i, n) * a

    def lin(mats, r, c):
        ent: dict = {}
        for i, m in enumerate(mats):
            xi = Poly.var(i, n)
            for a, b, v in m.entries():
                ent[(a, b)] = ent.get((a, b), Poly.zero(n)) + xi * v
        return PolyMatrix(r, c, n, ent)

    d1 = lin(M.up, M.m0, M.m1)
    d0 = lin(M.down, M.m1, M.m0)
    grading = Grading(WeightSystem((1,) * n, 2), (-1,) * M.m1, (0,) * M.m0) if n else None
    return MatrixFactorization(f, d1, d0, names, M.form.mode, grading)


def form_of_polynomial(f: Poly, mode: str) -> DiagonalForm:
    """Read a diagonal quadratic form off f, or fail."""
    n = f.nvars
    coeffs = []
    for i in range(n):
        e = [0] * n
        e[i] = 2
        coeffs.append(f.terms.get(tuple(e), 0))
    q = DiagonalForm(tuple(coeffs), mode)
    if len(f.terms) != n:
        raise MfkError("f is not a diagonal quadratic form")
    return q


def mf_to_clifford_module(P: MatrixFactorization, q: Optional[DiagonalForm] = None) -> GradedCliffordModule:
    """Extract the Clifford action from a factorization with linear entries."""
    n = P.nvars
    if q is None:
        q = form_of_polynomial(P.f, P.mode)
    if q.n != n:
        raise MfkError("form and factorization have different variable counts")
    want = Poly.zero(n)
    for i, a in enumerate(q.coeffs):
        want = want + Poly.var(i, n) * Poly.var(i, n) * a
    if P.f != want:
        raise MfkError("f is not the given diagonal quadratic form")

    def extract(m: PolyMatrix, r, c):
        mats = [dict() for _ in range(n)]
        for (a, b), p in m.entries.items():
            if not p.is_linear_form():
                raise MfkError(f"entry ({a},{b}) is not linear")
            for k, v in enumerate(p.linear_coefficients()):
                if v:
                    mats[k].setdefault(a, {})[b] = v
        return [SMat(r, c, x) for x in mats]

    M = GradedCliffordModule(q, P.r1, P.r0, extract(P.d1, P.r0, P.r1), extract(P.d0, P.r1, P.r0))
    return M.check()


def graded_tensor(M: GradedCliffordModule, N: GradedCliffordModule) -> GradedCliffordModule:
    """Graded tensor over q + q' with Koszul signs.

    Odd part V1 (x) W0 + V0 (x) W1, even part V0 (x) W0 + V1 (x) W1.
    """
    M.check()
    N.check()
    z = SMat.zeros
    I0, I1 = SMat.identity(M.m0), SMat.identity(M.m1)
    J0, J1 = SMat.identity(N.m0), SMat.identity(N.m1)
    r_odd = (M.m1 * N.m0, M.m0 * N.m1)
    r_even = (M.m0 * N.m0, M.m1 * N.m1)
    up, down = [], []
    for u, d in zip(M.up, M.down):
        up.append(sblock([[skron(u, J0), z(r_even[0], r_odd[1])],
                          [z(r_even[1], r_odd[0]), skron(d, J1)]]))
        down.append(sblock([[skron(d, J0), z(r_odd[0], r_even[1])],
                            [z(r_odd[1], r_even[0]), skron(u, J1)]]))
    for u, d in zip(N.up, N.down):
        up.append(sblock([[z(r_even[0], r_odd[0]), skron(I0, u)],
                          [-skron(I1, d), z(r_even[1], r_odd[1])]]))
        down.append(sblock([[z(r_odd[0], r_even[0]), -skron(I1, u)],
                            [skron(I0, d), z(r_odd[1], r_even[1])]]))
    return GradedCliffordModule(M.form.direct_sum(N.form), sum(r_odd), sum(r_even), up, down)


def unit_module() -> GradedCliffordModule:
    """The ground field in even degree, a module over the empty form (tensor unit)."""
    return GradedCliffordModule(DiagonalForm((), RATIONAL), 0, 1, (), ())


# Eight anticommuting 16x16 words in I, X = [[0,1],[1,0]], Z = [[1,0],[0,-1]],
# J = [[0,-1],[1,0]].  Each has an odd number of J factors (so squares to -I)
# and ends in X or J (so it is odd for the grading I(x)I(x)I(x)Z, whose +1
# eigenvectors are the even-indexed coordinates).
X8_WORDS = ("IIIJ", "IIJX", "IJXX", "XJZX", "ZJZX", "JIZX", "JXXX", "JZXX")

_PAULI = {
    "I": ((1, 0), (0, 1)),
    "X": ((0, 1), (1, 0)),
    "Z": ((1, 0), (0, -1)),
    "J": ((0, -1), (1, 0)),
}


def _word_matrix(word: str) -> SMat:
    return reduce(skron, (SMat.from_dense(_PAULI[ch]) for ch in word))


def column_module_X8(positive: bool = False) -> GradedCliffordModule:
    """The 16-dimensional module of Cliff(-u_1^2 - ... - u_8^2) = Mat16(R).

    Coordinates are split by parity of their index: even indices form V0.
    With ``positive`` the form is +sum u_i^2 and the down maps are negated.
    """
    even = list(range(0, 16, 2))
    odd = list(range(1, 16, 2))
    up, down = [], []
    for w in X8_WORDS:
        E = _word_matrix(w)
        up.append(E.submatrix(even, odd))
        d = E.submatrix(odd, even)
        down.append(-d if positive else d)
    form = DiagonalForm((1 if positive else -1,) * 8, RATIONAL)
    return GradedCliffordModule(form, 8, 8, up, down).check()
