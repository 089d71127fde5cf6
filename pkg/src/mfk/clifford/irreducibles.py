"""Graded irreducible modules of C_n = Cliff(s*(x_1^2 + ... + x_n^2)).

Irreducibles are found by splitting seed modules with their commutant:
the regular module for small n, graded tensor products of irreducibles of
smaller algebras otherwise.  Completeness is checked with the Wedderburn
count  sum dim(S)^2 / dim End(S) = 2^(n+1)  for the algebra C_n # Z/2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from ..errors import MfkError
from ..exactalg.linalg import Eliminator
from ..exactalg.scalars import GAUSSIAN, RATIONAL, Gaussian, canon, div
from ..exactalg.smatrix import SMat
from .algebra import DiagonalForm
from .modules import GradedCliffordModule, graded_tensor, regular_module

# ------------------------------------------------------------------ Hom spaces


def _single_per_row(m: SMat) -> bool:
    return all(len(r) == 1 for r in m.rows.values())


class _RatioUnionFind:
    """Union-find over unknowns with relations x_u = ratio * x_v."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.ratio = [1] * size
        self.dead = [False] * size

    def find(self, u):
        lam = 1
        path = []
        while self.parent[u] != u:
            path.append(u)
            lam = lam * self.ratio[u]
            u = self.parent[u]
        root = u
        # compress: recompute ratios along the path
        acc = lam
        for v in path:
            r = self.ratio[v]
            self.parent[v] = root
            self.ratio[v] = acc
            acc = div(acc, r)
        return root, lam

    def relate(self, u, v, r):
        """Impose x_u = r * x_v."""
        ru, lu = self.find(u)
        rv, lv = self.find(v)
        if ru == rv:
            if lu != r * lv:
                self.dead[ru] = True
            return
        self.parent[ru] = rv
        self.ratio[ru] = div(r * lv, lu)
        self.dead[rv] = self.dead[rv] or self.dead[ru]

    def kill(self, u):
        self.dead[self.find(u)[0]] = True


def _hom_monomial(S: GradedCliffordModule, M: GradedCliffordModule, want_basis: bool):
    """Hom when every relevant action matrix has one entry per row/column."""
    n1 = M.m1 * S.m1
    uf = _RatioUnionFind(n1 + M.m0 * S.m0)

    def x1(a, c):  # phi1[a, c]
        return a * S.m1 + c

    def x0(r, b):  # phi0[r, b]
        return n1 + r * S.m0 + b

    for i in range(S.n):
        upM, downM = M.up[i], M.down[i]
        upS_t, downS_t = S.up[i].transpose(), S.down[i].transpose()
        # up_M phi1 = phi0 up_S, entry (r, c): r in M0, c in S1
        for r in range(M.m0):
            rowM = upM.rows.get(r)
            for c in range(S.m1):
                colS = upS_t.rows.get(c)
                _relate2(uf, rowM, colS, lambda a: x1(a, c), lambda b: x0(r, b))
        # down_M phi0 = phi1 down_S, entry (r, c): r in M1, c in S0
        for r in range(M.m1):
            rowM = downM.rows.get(r)
            for c in range(S.m0):
                colS = downS_t.rows.get(c)
                _relate2(uf, rowM, colS, lambda a: x0(a, c), lambda b: x1(r, b))
    comps: dict = {}
    for u in range(len(uf.parent)):
        root, lam = uf.find(u)
        if not uf.dead[root]:
            comps.setdefault(root, []).append((u, lam))
    if not want_basis:
        return len(comps)
    basis = []
    for members in comps.values():
        r1, r0 = {}, {}
        for u, lam in members:
            if u < n1:
                a, c = divmod(u, S.m1)
                r1.setdefault(a, {})[c] = lam
            else:
                r, b = divmod(u - n1, S.m0)
                r0.setdefault(r, {})[b] = lam
        basis.append((SMat(M.m0, S.m0, r0), SMat(M.m1, S.m1, r1)))
    return basis


def _relate2(uf, rowM, colS, left, right):
    """Equation sum_a rowM[a] * left(a) - sum_b colS[b] * right(b) = 0 with <= 1 term each."""
    if rowM and colS:
        (a, va), = rowM.items()
        (b, vb), = colS.items()
        uf.relate(left(a), right(b), div(vb, va))
    elif rowM:
        (a, _), = rowM.items()
        uf.kill(left(a))
    elif colS:
        (b, _), = colS.items()
        uf.kill(right(b))


def _hom_general(S: GradedCliffordModule, M: GradedCliffordModule, want_basis: bool):
    n1 = M.m1 * S.m1
    el = Eliminator(track=want_basis)
    upS_t = [u.transpose() for u in S.up]
    downS_t = [d.transpose() for d in S.down]
    upM_cols = [u.transpose() for u in M.up]
    downM_cols = [d.transpose() for d in M.down]
    # unknown phi1[a, c]: appears in U(i, r, c) with up_M[i][r, a] and D(i, a, c') with -down_S[i][c, c']
    for a in range(M.m1):
        for c in range(S.m1):
            vec: dict = {}
            for i in range(S.n):
                for r, v in upM_cols[i].rows.get(a, {}).items():
                    _acc(vec, (0, i, r, c), v)
                for c2, v in S.down[i].rows.get(c, {}).items():
                    _acc(vec, (1, i, a, c2), -v)
            el.add(vec, a * S.m1 + c)
    for r in range(M.m0):
        for b in range(S.m0):
            vec = {}
            for i in range(S.n):
                for c, v in S.up[i].rows.get(b, {}).items():
                    _acc(vec, (0, i, r, c), -v)
                for r2, v in downM_cols[i].rows.get(r, {}).items():
                    _acc(vec, (1, i, r2, b), v)
            el.add(vec, n1 + r * S.m0 + b)
    del upS_t, downS_t
    total = M.m1 * S.m1 + M.m0 * S.m0
    if not want_basis:
        return total - el.rank
    basis = []
    for kv in el.kernel:
        r1, r0 = {}, {}
        for u, lam in kv.items():
            if u < n1:
                a, c = divmod(u, S.m1)
                r1.setdefault(a, {})[c] = lam
            else:
                r, b = divmod(u - n1, S.m0)
                r0.setdefault(r, {})[b] = lam
        basis.append((SMat(M.m0, S.m0, r0), SMat(M.m1, S.m1, r1)))
    return basis


def _acc(vec, key, v):
    w = vec.get(key, 0) + v
    if w:
        vec[key] = w
    else:
        vec.pop(key, None)


def _is_monomial(S: GradedCliffordModule, M: GradedCliffordModule) -> bool:
    return (all(_single_per_row(m) for m in M.up + M.down)
            and all(_single_per_row(m.transpose()) for m in S.up + S.down))


def hom_space(S: GradedCliffordModule, M: GradedCliffordModule, want_basis: bool = True):
    """Even module maps S -> M, as pairs (phi0, phi1), or just the dimension."""
    if S.form != M.form:
        raise MfkError("modules over different forms")
    if _is_monomial(S, M):
        return _hom_monomial(S, M, want_basis)
    return _hom_general(S, M, want_basis)


def hom_dim(S, M) -> int:
    return hom_space(S, M, want_basis=False)


# ----------------------------------------------------------- commutant algebra

def _pmul(p, q):
    return (p[0] @ q[0], p[1] @ q[1])


def _padd(p, q):
    return (p[0] + q[0], p[1] + q[1])


def _pscale(p, c):
    return (p[0].scale(c), p[1].scale(c))


def _pid(M):
    return (SMat.identity(M.m0), SMat.identity(M.m1))


def _trace(p) -> object:
    t = 0
    for m in p:
        for i, r in m.rows.items():
            t = t + r.get(i, 0)
    return canon(t)


def _flat(p) -> dict:
    out = {}
    for k, m in enumerate(p):
        for i, j, v in m.entries():
            out[(k, i, j)] = v
    return out


def min_poly(phi, M) -> list:
    """Monic minimal polynomial of a commutant element, ascending coefficients."""
    el = Eliminator(track=True)
    power = _pid(M)
    k = 0
    while True:
        if not el.add(_flat(power), k):
            rel = el.kernel[-1]
            top = rel[k]
            return [div(rel.get(j, 0), top) for j in range(k + 1)]
        power = _pmul(phi, power)
        k += 1


def _to_sympy(c):
    g = Gaussian(c) if not isinstance(c, Gaussian) else c
    q = lambda f: sympy.Rational(f.numerator, f.denominator)
    return q(g.re) + sympy.I * q(g.im)


def _from_sympy(z):
    re, im = sympy.re(z), sympy.im(z)
    r = Fraction(int(sympy.numer(re)), int(sympy.denom(re)))
    i = Fraction(int(sympy.numer(im)), int(sympy.denom(im)))
    return canon(Gaussian(r, i))


def factor_poly(coeffs, mode) -> list:
    """Irreducible factors over Q or Q(i) as (ascending coefficients, multiplicity)."""
    x = sympy.Symbol("x")
    expr = sum(_to_sympy(c) * x ** k for k, c in enumerate(coeffs))
    if mode == GAUSSIAN:
        _, facs = sympy.factor_list(expr, x, extension=sympy.I)
    else:
        _, facs = sympy.factor_list(expr, x)
    out = []
    for fac, mult in facs:
        cs = [_from_sympy(c) for c in sympy.Poly(fac, x).all_coeffs()]
        lead = cs[0]
        out.append(([div(c, lead) for c in reversed(cs)], mult))
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return [canon(c) for c in out]


def _eval_poly(coeffs, phi, M):
    """Horner evaluation of a polynomial at phi."""
    acc = _pscale(_pid(M), coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = _padd(_pmul(phi, acc), _pscale(_pid(M), c))
    return acc


def _kernel(A: SMat) -> list:
    """Basis of {v : A v = 0} as sparse dicts."""
    cols = A.transpose()
    el = Eliminator(track=True)
    for j in range(A.ncols):
        el.add(dict(cols.rows.get(j, {})), j)
    return el.kernel


def _coords(basis: list, vectors: list) -> list:
    el = Eliminator(track=True)
    for k, v in enumerate(basis):
        el.add(v, k)
    out = []
    for v in vectors:
        c = el.solve(v)
        if c is None:
            raise AssertionError("subspace is not invariant")
        out.append(c)
    return out


def _apply(m: SMat, v: dict) -> dict:
    out: dict = {}
    for i, r in m.rows.items():
        s = 0
        for j, x in r.items():
            if j in v:
                s = s + x * v[j]
        if s:
            out[i] = s
    return out


def submodule(M: GradedCliffordModule, K0: list, K1: list) -> GradedCliffordModule:
    """The action on an invariant pair of subspaces, in the given bases."""
    up, down = [], []
    for u, d in zip(M.up, M.down):
        cu = _coords(K0, [_apply(u, v) for v in K1])
        cd = _coords(K1, [_apply(d, v) for v in K0])
        rows_u: dict = {}
        for col, c in enumerate(cu):
            for row, val in c.items():
                rows_u.setdefault(row, {})[col] = val
        rows_d: dict = {}
        for col, c in enumerate(cd):
            for row, val in c.items():
                rows_d.setdefault(row, {})[col] = val
        up.append(SMat(len(K0), len(K1), rows_u))
        down.append(SMat(len(K1), len(K0), rows_d))
    return GradedCliffordModule(M.form, len(K1), len(K0), up, down)


# ------------------------------------------------------------- irreducibility

def inertia(B: list) -> tuple:
    """(positive, negative, zero) counts of a symmetric rational matrix."""
    A = [[Fraction(x) for x in row] for row in B]
    n = len(A)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace row/col i by i + j (congruence), making A[i][i] = 2 A[i][j] (+ A[j][j] = 0)
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        p = A[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            c = A[i][piv] / p
            if c:
                for k in range(n):
                    A[i][k] -= c * A[piv][k]
                for k in range(n):
                    A[k][i] -= c * A[k][piv]
    return pos, neg, n - pos - neg


def end_is_division(basis: list, mode: str) -> bool:
    k = len(basis)
    if k == 1:
        return True
    if mode == GAUSSIAN or k not in (2, 4):
        return False
    gram = [[_trace(_pmul(a, b)) for b in basis] for a in basis]
    return inertia(gram)[0] == 1


def _candidates(basis, rng):
    yield from basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            yield _padd(basis[i], basis[j])
            yield _pmul(basis[i], basis[j])
    for _ in range(40):
        acc = None
        for b in basis:
            c = rng.randint(-2, 2)
            if c:
                term = _pscale(b, c)
                acc = term if acc is None else _padd(acc, term)
        if acc is not None:
            yield acc


def split_once(M: GradedCliffordModule, basis: list):
    """Split M into two nonzero submodules using a commutant element, or None."""
    import random

    rng = random.Random(1)
    mode = M.form.mode
    for phi in _candidates(basis, rng):
        mp = min_poly(phi, M)
        if len(mp) <= 2:
            continue
        facs = factor_poly(mp, mode)
        if len(facs) < 2:
            continue
        p, mult = facs[0]
        g = [1]
        for _ in range(mult):
            g = _poly_mul(g, p)
        h = [1]
        for q, m in facs[1:]:
            for _ in range(m):
                h = _poly_mul(h, q)
        parts = []
        for poly in (g, h):
            e0, e1 = _eval_poly(poly, phi, M)
            parts.append(submodule(M, _kernel(e0), _kernel(e1)))
        return parts
    return None


def decompose(M: GradedCliffordModule) -> list:
    """Irreducible summands of M (with repetition)."""
    if M.dim == 0:
        return []
    basis = hom_space(M, M)
    if end_is_division(basis, M.form.mode):
        return [M]
    parts = split_once(M, basis)
    if parts is None:
        raise AssertionError("could not split a reducible module")
    return [S for part in parts for S in decompose(part)]


@dataclass(frozen=True, eq=False)
class Irreducible:
    module: GradedCliffordModule
    end_dim: int


def _seeds(n: int, mode: str, sign: int) -> list:
    form = DiagonalForm((sign,) * n, mode)
    if n == 0:
        return [GradedCliffordModule(form, 0, 1, (), ())]
    if n <= 5:
        return [regular_module(form)]
    b = 8 if n >= 9 else n // 2
    left = irreducibles(n - b, mode, sign)
    right = irreducibles(b, mode, sign)
    return [graded_tensor(S.module, T.module) for S in left for T in right]


@lru_cache(maxsize=None)
def irreducibles(n: int, mode: str = RATIONAL, sign: int = -1) -> tuple:
    """All graded irreducibles of Cliff(sign * sum x_i^2), up to isomorphism."""
    found: list = []
    for seed in _seeds(n, mode, sign):
        for S in decompose(seed):
            for cand in (S, S.parity_shift()):
                if not any(cand.dim == T.module.dim and hom_dim(cand, T.module) for T in found):
                    found.append(Irreducible(cand, hom_dim(cand, cand)))
    total = sum(Fraction(T.module.dim ** 2, T.end_dim) for T in found)
    if total != 2 ** (n + 1):
        raise AssertionError(f"irreducible enumeration for n={n} is incomplete ({total} != {2 ** (n + 1)})")
    return tuple(found)


def multiplicities(M: GradedCliffordModule, irr: tuple) -> list:
    """Multiplicity of each irreducible in M."""
    out = []
    for T in irr:
        h = hom_dim(T.module, M)
        if h % T.end_dim:
            raise AssertionError("Hom dimension not divisible by End dimension")
        out.append(h // T.end_dim)
    total = sum(m * T.module.dim for m, T in zip(out, irr))
    if total != M.dim:
        raise AssertionError("multiplicities do not account for the module dimension")
    return out
