"""The Hom complex between factorizations: graded homology and homotopy solvers.

An even map is (a1: P1 -> P1', a0: P0 -> P0'); an odd map is
(b1: P1 -> P0', b0: P0 -> P1').  The differential is d'h - (-1)^|h| h d:

    even -> odd:  b1 = d1' a1 - a0 d1,   b0 = d0' a0 - a1 d0
    odd -> even:  a1 = d0' b1 + b0 d1,   a0 = d1' b0 + b1 d0

For graded inputs an even map of internal degree t has entries of degree
t + deg1'[i] - deg1[j] (a1) and t + deg0'[i] - deg0[j] (a0); an odd one has
t + deg0'[i] - deg1[j] (b1) and t + d + deg1'[i] - deg0[j] (b0).  The
differential sends even_t to odd_t and odd_t to even_{t+d}.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from .errors import MfkError, UngradedError, WindowCapExceeded
from .exactalg.grading import WeightSystem, monomials_of_degree
from .exactalg.linalg import Eliminator
from .exactalg.matrix import PolyMatrix
from .exactalg.poly import Poly
from .mfcore.factorization import (
    MatrixFactorization,
    MFMorphism,
    OddMap,
    boundary_odd,
)

EVEN, ODD = 0, 1
# block tags: a1, a0 (even), b1, b0 (odd)
A1, A0, B1, B0 = 0, 1, 2, 3


def _cols(m: PolyMatrix):
    """Column-indexed sparse view: j -> [(i, poly)]."""
    out: dict = {}
    for (i, j), p in m.entries.items():
        out.setdefault(j, []).append((i, p))
    return out


def _rows(m: PolyMatrix):
    out: dict = {}
    for (i, j), p in m.entries.items():
        out.setdefault(i, []).append((j, p))
    return out


class HomComplex:
    """Sparse boundary images in Hom(P, Q) with integer-packed keys.

    A key packs (block, row, col, exponent) so that integer order equals the
    lexicographic order of those tuples; exponents are base-``b`` digits.
    """

    def __init__(self, P: MatrixFactorization, Q: MatrixFactorization, base: int = 8,
                 R: Optional[int] = None):
        if P.vars != Q.vars:
            raise MfkError("Hom complex needs factorizations over the same variables")
        if P.f != Q.f:
            raise MfkError("Hom complex needs factorizations of the same f")
        self.P, self.Q = P, Q
        self.n = P.nvars
        self.base = base
        self.mono_span = base ** self.n
        self.R = R or max(P.r0, P.r1, Q.r0, Q.r1, 1)
        self.Qd1c, self.Qd0c = _cols(Q.d1), _cols(Q.d0)
        self.Pd1r, self.Pd0r = _rows(P.d1), _rows(P.d0)
        self.shape = {A1: (Q.r1, P.r1), A0: (Q.r0, P.r0), B1: (Q.r0, P.r1), B0: (Q.r1, P.r0)}
        self._contrib: dict = {}

    def code(self, e) -> int:
        c = 0
        for x in e:
            if x >= self.base:
                raise OverflowError("exponent exceeds the packing base")
            c = c * self.base + x
        return c

    def key(self, blk: int, r: int, c: int, e) -> int:
        return ((blk * self.R + r) * self.R + c) * self.mono_span + self.mono_span - 1 - self.code(e)

    def _terms(self, p: Poly, sign: int):
        return [(self.code(e), c if sign > 0 else -c) for e, c in p.terms.items()]

    def contributions(self, blk: int, i: int, j: int):
        """[(packed (block, row, col) offset, [(exp code, coeff)])] for x^0 * E_ij."""
        k3 = (blk, i, j)
        out = self._contrib.get(k3)
        if out is not None:
            return out
        R, M = self.R, self.mono_span
        out = []

        def add(b, r, c, p, sign):
            out.append((((b * R + r) * R + c) * M + M - 1, self._terms(p, sign)))

        if blk == A1:    # b1 += d1' a1 ; b0 -= a1 d0
            for k, p in self.Qd1c.get(i, ()):
                add(B1, k, j, p, 1)
            for l, p in self.Pd0r.get(j, ()):
                add(B0, i, l, p, -1)
        elif blk == A0:  # b1 -= a0 d1 ; b0 += d0' a0
            for l, p in self.Pd1r.get(j, ()):
                add(B1, i, l, p, -1)
            for k, p in self.Qd0c.get(i, ()):
                add(B0, k, j, p, 1)
        elif blk == B1:  # a1 += d0' b1 ; a0 += b1 d0
            for k, p in self.Qd0c.get(i, ()):
                add(A1, k, j, p, 1)
            for l, p in self.Pd0r.get(j, ()):
                add(A0, i, l, p, 1)
        else:            # a1 += b0 d1 ; a0 += d1' b0
            for l, p in self.Pd1r.get(j, ()):
                add(A1, i, l, p, 1)
            for k, p in self.Qd1c.get(i, ()):
                add(A0, k, j, p, 1)
        self._contrib[k3] = out
        return out

    def image(self, blk: int, i: int, j: int, ecode: int) -> dict:
        """Boundary of x^e * E_ij in block ``blk`` (``ecode`` is the packed exponent)."""
        out: dict = {}
        get = out.get
        for off, terms in self.contributions(blk, i, j):
            base = off - ecode
            for c2, coef in terms:
                key = base - c2
                v = get(key, 0) + coef
                if v:
                    out[key] = v
                else:
                    del out[key]
        return out

    def keys_of(self, blk: int, i: int, j: int, ecode: int):
        for off, terms in self.contributions(blk, i, j):
            base = off - ecode
            for c2, _ in terms:
                yield base - c2


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        root = x
        while True:
            p = parent.get(root, root)
            if p == root:
                break
            root = p
        while x != root:
            nxt = parent.get(x, x)
            parent[x] = root
            x = nxt
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
        return rb


def rank_of_images(basis, image_fn, keys_fn=None, split: bool = True) -> int:
    """Rank of the span of image_fn(b) over b in basis.

    With ``split`` the basis is first partitioned into groups whose images
    share no keys (union-find over ``keys_fn``), and each group is eliminated
    on its own so that only one group's pivots are alive at a time.
    """
    if not split:
        el = Eliminator()
        for b in basis:
            el.add(image_fn(b))
        return el.rank
    keys_fn = keys_fn or (lambda b: iter(image_fn(b)))
    uf = _UnionFind()
    anchor = []
    for b in basis:
        keys = iter(keys_fn(b))
        first = next(keys, None)
        if first is None:
            anchor.append(None)
            continue
        root = uf.find(first)
        for k in keys:
            root = uf.union(k, root)
        anchor.append(first)
    groups: dict = {}
    for b, a in zip(basis, anchor):
        if a is not None:
            groups.setdefault(uf.find(a), []).append(b)
    del uf, anchor
    total = 0
    for root in list(groups):
        members = groups.pop(root)
        el = Eliminator()
        for b in members:
            el.add(image_fn(b))
        total += el.rank
    return total


def _common_weights(P: MatrixFactorization, Q: MatrixFactorization) -> Optional[WeightSystem]:
    if P.grading is None or Q.grading is None or P.grading.weights != Q.grading.weights:
        return None
    return P.grading.weights


def _offsets(P, Q, parity):
    """(block, i, j, offset) with entry degree = t + offset."""
    gp, gq = P.grading, Q.grading
    d = gp.d
    out = []
    if parity == EVEN:
        out += [(A1, i, j, gq.deg1[i] - gp.deg1[j]) for i in range(Q.r1) for j in range(P.r1)]
        out += [(A0, i, j, gq.deg0[i] - gp.deg0[j]) for i in range(Q.r0) for j in range(P.r0)]
    else:
        out += [(B1, i, j, gq.deg0[i] - gp.deg1[j]) for i in range(Q.r0) for j in range(P.r1)]
        out += [(B0, i, j, d + gq.deg1[i] - gp.deg0[j]) for i in range(Q.r1) for j in range(P.r0)]
    return out


def graded_basis(P, Q, parity: int, t: int, hc: Optional[HomComplex] = None) -> list:
    """Basis (block, i, j, exponent) of the degree-t maps of the given parity.

    With ``hc`` the exponent is replaced by its packed code.
    """
    w = P.grading.weights
    out = []
    for blk, i, j, off in _offsets(P, Q, parity):
        for e in monomials_of_degree(w, t + off):
            out.append((blk, i, j, hc.code(e) if hc is not None else e))
    return out


def _default_cap() -> int:
    return int(os.environ.get("MFK_WINDOW_CAP", "64"))


@dataclass
class HomHomology:
    table: dict            # t -> (dim H0_t, dim H1_t)
    totals: tuple
    window: tuple
    slice_dims: dict = field(default_factory=dict)   # t -> (dim even_t, dim odd_t)

    def to_dict(self) -> dict:
        return {
            "totals": {"H0": self.totals[0], "H1": self.totals[1]},
            "window": list(self.window),
            "table": {str(t): {"H0": a, "H1": b} for t, (a, b) in sorted(self.table.items())},
        }


class GradedHom:
    """Lazily computed ranks of the slices of Hom(P, Q) for graded P, Q."""

    def __init__(self, P: MatrixFactorization, Q: MatrixFactorization, split: bool = True):
        if _common_weights(P, Q) is None:
            raise UngradedError("homology needs both factorizations graded over the same weights")
        HomComplex(P, Q)  # same-ring checks
        self.P, self.Q = P, Q
        self.d = P.grading.d
        self.split = split
        self._rank: dict = {}
        self._dim: dict = {}

    def dim(self, parity: int, t: int) -> int:
        key = (parity, t)
        if key not in self._dim:
            w = self.P.grading.weights
            self._dim[key] = sum(len(monomials_of_degree(w, t + off))
                                 for *_, off in _offsets(self.P, self.Q, parity))
        return self._dim[key]

    def rank(self, parity: int, t: int) -> int:
        """Rank of the differential leaving the parity-``parity`` slice of degree t."""
        key = (parity, t)
        if key not in self._rank:
            if self.dim(parity, t) == 0:
                self._rank[key] = 0
            else:
                hc = self._complex(parity, t)
                basis = graded_basis(self.P, self.Q, parity, t, hc)
                self._rank[key] = rank_of_images(basis, lambda b: hc.image(*b),
                                                 lambda b: hc.keys_of(*b), self.split)
        return self._rank[key]

    def _complex(self, parity: int, t: int) -> HomComplex:
        offs = [off for *_, off in _offsets(self.P, self.Q, 1 - parity)]
        top = t + max(offs, default=0) + (self.d if parity == ODD else 0)
        return HomComplex(self.P, self.Q, base=max(top, 0) + 2)

    def h0(self, t: int) -> int:
        return self.dim(EVEN, t) - self.rank(EVEN, t) - self.rank(ODD, t - self.d)

    def h1(self, t: int) -> int:
        return self.dim(ODD, t) - self.rank(ODD, t) - self.rank(EVEN, t)


def hom_homology_dims(P: MatrixFactorization, Q: MatrixFactorization,
                      cap: Optional[int] = None, split: bool = True) -> HomHomology:
    """Degreewise dimensions of H^0 and H^1 of Hom(P, Q) with totals."""
    gh = GradedHom(P, Q, split)
    w = P.grading.weights
    margin = w.max_weight
    offs = [off for par in (EVEN, ODD) for *_, off in _offsets(P, Q, par)]
    if not offs:
        return HomHomology({}, (0, 0), (0, 0))
    socle = max(sum(w.degree - 2 * wi for wi in w.weights), 0)
    t_start = -max(offs)
    t_top = -min(offs) + socle
    cap = _default_cap() if cap is None else cap
    table, dims = {}, {}
    t = t_start - margin
    last_nonzero = t_top
    while True:
        a, b = gh.h0(t), gh.h1(t)
        dims[t] = (gh.dim(EVEN, t), gh.dim(ODD, t))
        table[t] = (a, b)
        if a or b:
            last_nonzero = max(last_nonzero, t)
        if t >= last_nonzero + margin:
            break
        if t - t_top > cap:
            partial = HomHomology(table, _totals(table), (t_start - margin, t), dims)
            raise WindowCapExceeded(f"homology window exceeded the cap of {cap} degrees", partial)
        t += 1
    return HomHomology(table, _totals(table), (t_start - margin, t), dims)


def _totals(table):
    return (sum(a for a, _ in table.values()), sum(b for _, b in table.values()))


# ---------------------------------------------------------------- certificates

@dataclass
class HomotopyCertificate:
    """Either a null-homotopy h (d'h + hd = alpha) or an equivalence (alpha, beta, h, h2)."""

    kind: str
    h: Optional[OddMap] = None
    alpha: Optional[MFMorphism] = None
    beta: Optional[MFMorphism] = None
    h2: Optional[OddMap] = None
    bound: Optional[int] = None

    def verify(self, target: Optional[MFMorphism] = None) -> bool:
        if self.kind == "null":
            got = boundary_odd(self.h)
            return got.a1 == target.a1 and got.a0 == target.a0
        a, b = self.alpha, self.beta
        P, Q = a.source, a.target
        if not (a.is_cycle() and b.is_cycle()):
            return False
        ba = boundary_odd(self.h)
        ab = boundary_odd(self.h2)
        return (b.a1 @ a.a1 - PolyMatrix.identity(P.r1, P.nvars) == ba.a1
                and b.a0 @ a.a0 - PolyMatrix.identity(P.r0, P.nvars) == ba.a0
                and a.a1 @ b.a1 - PolyMatrix.identity(Q.r1, Q.nvars) == ab.a1
                and a.a0 @ b.a0 - PolyMatrix.identity(Q.r0, Q.nvars) == ab.a0)


def _blocks(parity):
    return (A1, A0) if parity == EVEN else (B1, B0)


def _shape(P, Q, blk):
    return {A1: (Q.r1, P.r1), A0: (Q.r0, P.r0), B1: (Q.r0, P.r1), B0: (Q.r1, P.r0)}[blk]


def _basis(P, Q, parity, spec) -> list:
    """Exponent-level basis; spec is ("graded", t) or ("bounded", B)."""
    if spec[0] == "graded":
        return graded_basis(P, Q, parity, spec[1])
    B = spec[1]
    monos = [e for k in range(B + 1) for e in monomials_of_degree((1,) * P.nvars, k)]
    out = []
    for blk in _blocks(parity):
        rows, cols = _shape(P, Q, blk)
        out += [(blk, i, j, e) for i in range(rows) for j in range(cols) for e in monos]
    return out


def _assemble(P, Q, parity, basis, combo):
    """Turn a combination of basis labels into an even or odd map P -> Q."""
    n = P.nvars
    mats = {blk: {} for blk in _blocks(parity)}
    for k, c in combo.items():
        blk, i, j, e = basis[k]
        cur = mats[blk].get((i, j), Poly.zero(n))
        mats[blk][(i, j)] = cur + Poly.monomial(e, c)
    built = [PolyMatrix(*_shape(P, Q, blk), n, mats[blk]) for blk in _blocks(parity)]
    if parity == EVEN:
        return MFMorphism(P, Q, built[0], built[1])
    return OddMap(P, Q, built[0], built[1])


def _pair_vec(hc: HomComplex, blocks: dict, shift: int = 0, sign: int = 1) -> dict:
    out: dict = {}
    for blk, m in blocks.items():
        for (i, j), p in m.entries.items():
            for e, c in p.terms.items():
                k = hc.key(blk, i, j, e) + shift
                v = out.get(k, 0) + (c if sign > 0 else -c)
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return out


def _image(hc: HomComplex, b) -> dict:
    blk, i, j, e = b
    return hc.image(blk, i, j, hc.code(e))


def _make_complex(P, Q, bases, extra_degree: int, R: int) -> HomComplex:
    """A HomComplex whose packing base covers every exponent that can occur."""
    top = max((sum(b[3]) for basis in bases for b in basis), default=0)
    return HomComplex(P, Q, base=top + extra_degree + 2, R=R)


def _extra(*items) -> int:
    """Max entry degree among factorizations and morphisms, plus deg f."""
    degs = [0]
    for x in items:
        if isinstance(x, MatrixFactorization):
            degs += [x.max_entry_degree(), x.f.degree()]
        else:
            degs += [x.a1.max_degree(), x.a0.max_degree()]
    return 2 * max(degs)


def _degree_of_morphism(alpha: MFMorphism) -> Optional[int]:
    """Internal degree t if alpha is homogeneous for common gradings, else None."""
    s, u = alpha.source.grading, alpha.target.grading
    if s is None or u is None or s.weights != u.weights:
        return None
    w = s.weights
    degs = set()
    for mat, dt, ds in ((alpha.a1, u.deg1, s.deg1), (alpha.a0, u.deg0, s.deg0)):
        for (i, j), p in mat.entries.items():
            for e in p.terms:
                degs.add(sum(a * b for a, b in zip(e, w.weights)) - dt[i] + ds[j])
    if len(degs) == 1:
        return degs.pop()
    return None if degs else 0


def default_bound(*mfs: MatrixFactorization) -> int:
    env = os.environ.get("MFK_DEGREE_BOUND")
    if env:
        return int(env)
    return max(P.max_entry_degree() for P in mfs) + max(P.f.degree() for P in mfs)


def _solve_null(alpha: MFMorphism, spec) -> Optional[OddMap]:
    P, Q = alpha.source, alpha.target
    R = max(P.r0, P.r1, Q.r0, Q.r1, 1)
    basis = _basis(P, Q, ODD, spec)
    hc = _make_complex(P, Q, [basis], _extra(P, Q, alpha), R)
    el = Eliminator(track=True)
    for k, b in enumerate(basis):
        el.add(_image(hc, b), k)
    combo = el.solve(_pair_vec(hc, {A1: alpha.a1, A0: alpha.a0}))
    if combo is None:
        return None
    return _assemble(P, Q, ODD, basis, combo)


def find_null_homotopy(alpha: MFMorphism, bound: Optional[int] = None) -> Optional[HomotopyCertificate]:
    """Solve d'h + hd = alpha; None means no h within the degree bound."""
    bad = alpha.cycle_defect()
    if bad:
        raise MfkError(f"not a cycle: {bad}")
    P, Q = alpha.source, alpha.target
    if alpha.a1.is_zero() and alpha.a0.is_zero():
        return HomotopyCertificate("null", h=OddMap.zero(P, Q), bound=0)
    t = _degree_of_morphism(alpha)
    if t is not None:
        specs = [("graded", t - P.grading.d)]
    else:
        B = bound if bound is not None else default_bound(P, Q)
        specs = [("bounded", B)] + ([("bounded", 2 * B)] if bound is None else [])
    for spec in specs:
        h = _solve_null(alpha, spec)
        if h is not None:
            cert = HomotopyCertificate("null", h=h, bound=spec[1])
            if not cert.verify(alpha):
                raise AssertionError("null-homotopy failed re-verification")
            return cert
    return None


def is_null_homotopic(alpha: MFMorphism, bound: Optional[int] = None) -> bool:
    return find_null_homotopy(alpha, bound) is not None


def _cycle_basis(P, Q, spec, R):
    """Kernel of the differential on even maps P -> Q within the given degree range."""
    basis = _basis(P, Q, EVEN, spec)
    hc = _make_complex(P, Q, [basis], _extra(P, Q), R)
    el = Eliminator(track=True)
    for k, b in enumerate(basis):
        el.add(_image(hc, b), k)
    return basis, el.kernel


def degree_zero_cycles(P: MatrixFactorization, Q: MatrixFactorization) -> list:
    """A basis of the homogeneous degree-0 cycles P -> Q (graded inputs only)."""
    if _common_weights(P, Q) is None:
        raise UngradedError("degree-0 cycles need both factorizations graded over the same weights")
    R = max(P.r0, P.r1, Q.r0, Q.r1, 1)
    basis, cycles = _cycle_basis(P, Q, ("graded", 0), R)
    return [_assemble(P, Q, EVEN, basis, c) for c in cycles]


def _compose_image(hc: HomComplex, b, alpha: MFMorphism, shift: int) -> dict:
    """Keys of (x^e E_ij) after alpha, for an even basis map b of Q -> P."""
    blk, i, j, e = b
    src = alpha.a1 if blk == A1 else alpha.a0
    mono = Poly.monomial(e)
    out: dict = {}
    for (jj, l), p in src.entries.items():
        if jj != j:
            continue
        for e2, c in (mono * p).terms.items():
            k = hc.key(blk, i, l, e2) + shift
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _solve_inverse(alpha: MFMorphism, spec_even, spec_odd, R):
    """Find (beta, h) with beta a cycle Q -> P and beta*alpha - id = d h + h d."""
    P, Q = alpha.source, alpha.target
    bb = _basis(Q, P, EVEN, spec_even)
    hb = _basis(P, P, ODD, spec_odd)
    extra = _extra(P, Q, alpha)
    hc_qp = _make_complex(Q, P, [bb, hb], extra, R)
    hc_pp = HomComplex(P, P, base=hc_qp.base, R=R)
    shift = 4 * R * R * hc_qp.mono_span
    el = Eliminator(track=True)
    for k, b in enumerate(bb):
        vec = _image(hc_qp, b)
        vec.update(_compose_image(hc_pp, b, alpha, shift))
        el.add(vec, ("b", k))
    for k, b in enumerate(hb):
        img = _image(hc_pp, b)
        el.add({key + shift: -c for key, c in img.items()}, ("h", k))
    n = P.nvars
    target = _pair_vec(hc_pp, {A1: PolyMatrix.identity(P.r1, n), A0: PolyMatrix.identity(P.r0, n)}, shift)
    combo = el.solve(target)
    if combo is None:
        return None
    beta = _assemble(Q, P, EVEN, bb, {k: c for (tag, k), c in combo.items() if tag == "b"})
    h = _assemble(P, P, ODD, hb, {k: c for (tag, k), c in combo.items() if tag == "h"})
    return beta, h


def find_homotopy_equivalence(P: MatrixFactorization, Q: MatrixFactorization,
                              bound: Optional[int] = None, attempts: int = 8,
                              seed: int = 0) -> Optional[HomotopyCertificate]:
    """Search for a homotopy equivalence P -> Q; None means none within the bound."""
    import random

    if P.vars != Q.vars or P.f != Q.f:
        raise MfkError("equivalence needs factorizations of the same f over the same variables")
    R = max(P.r0, P.r1, Q.r0, Q.r1, 1)
    if _common_weights(P, Q) is not None:
        d = P.grading.d
        plans = [(("graded", 0), ("graded", -d), None)]
    else:
        B = bound if bound is not None else default_bound(P, Q)
        plans = [(("bounded", B), ("bounded", B), B)]
        if bound is None:
            plans.append((("bounded", 2 * B), ("bounded", 2 * B), 2 * B))
    rng = random.Random(seed)
    for spec_even, spec_odd, B in plans:
        basis, cycles = _cycle_basis(P, Q, spec_even, R)
        if not cycles:
            continue
        for attempt in range(attempts):
            if attempt == 0:
                coeffs = [1] * len(cycles)
            else:
                coeffs = [rng.randint(-3, 3) for _ in cycles]
            combo: dict = {}
            for c, vec in zip(coeffs, cycles):
                for k, v in vec.items():
                    combo[k] = combo.get(k, 0) + c * v
            combo = {k: v for k, v in combo.items() if v}
            if not combo:
                continue
            alpha = _assemble(P, Q, EVEN, basis, combo)
            found = _solve_inverse(alpha, spec_even, spec_odd, R)
            if found is None:
                continue
            beta, h = found
            gap = MFMorphism(Q, Q, alpha.a1 @ beta.a1 - PolyMatrix.identity(Q.r1, Q.nvars),
                             alpha.a0 @ beta.a0 - PolyMatrix.identity(Q.r0, Q.nvars))
            h2 = _solve_null(gap, spec_odd)
            if h2 is None:
                continue
            cert = HomotopyCertificate("equivalence", h=h, alpha=alpha, beta=beta, h2=h2, bound=B)
            if not cert.verify():
                raise AssertionError("equivalence certificate failed re-verification")
            return cert
    return None
