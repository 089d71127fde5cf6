"""Object-level constructions on matrix factorizations."""
from __future__ import annotations

from collections import deque
from dataclasses import replace
from typing import Optional, Sequence

from ..errors import MfkError, ValidationError
from ..exactalg.grading import WeightSystem, poly_weighted_degree, weighted_degree
from ..exactalg.matrix import PolyMatrix, block, kron
from ..exactalg.poly import Poly
from ..exactalg.scalars import RATIONAL
from .factorization import Grading, MatrixFactorization, MFMorphism

F_THEN_ID = "f_then_id"
ID_THEN_F = "id_then_f"


def shift(P: MatrixFactorization) -> MatrixFactorization:
    """P[1]: swap the halves and negate both differentials."""
    g = P.grading
    if g is not None:
        g = Grading(g.weights, g.deg0, tuple(x + g.d for x in g.deg1))
    return MatrixFactorization(P.f, -P.d0, -P.d1, P.vars, P.mode, g, P.labels0, P.labels1)


def _same_ring(P: MatrixFactorization, Q: MatrixFactorization):
    if P.vars != Q.vars:
        raise ValidationError("factorizations over different variables")
    if P.f != Q.f:
        raise ValidationError("factorizations of different polynomials")
    if P.mode != Q.mode:
        raise ValidationError("factorizations in different scalar modes")


def _common_weights(*gradings) -> Optional[WeightSystem]:
    if any(g is None for g in gradings):
        return None
    ws = {g.weights for g in gradings}
    return ws.pop() if len(ws) == 1 else None


def _prefixed(prefix, labels):
    return tuple((prefix,) + lab for lab in labels)


def direct_sum(P: MatrixFactorization, Q: MatrixFactorization) -> MatrixFactorization:
    _same_ring(P, Q)
    n = P.nvars
    d1 = block([[P.d1, PolyMatrix.zeros(P.r0, Q.r1, n)], [PolyMatrix.zeros(Q.r0, P.r1, n), Q.d1]])
    d0 = block([[P.d0, PolyMatrix.zeros(P.r1, Q.r0, n)], [PolyMatrix.zeros(Q.r1, P.r0, n), Q.d0]])
    w = _common_weights(P.grading, Q.grading)
    g = None
    if w is not None:
        g = Grading(w, P.grading.deg1 + Q.grading.deg1, P.grading.deg0 + Q.grading.deg0)
    return MatrixFactorization(
        P.f, d1, d0, P.vars, P.mode, g,
        _prefixed("L", P.labels1) + _prefixed("R", Q.labels1),
        _prefixed("L", P.labels0) + _prefixed("R", Q.labels0),
    )


def morphism_degree_ok(alpha: MFMorphism, t: int = 0) -> bool:
    """True when both factorizations are graded alike and alpha is homogeneous of degree t."""
    s, u = alpha.source.grading, alpha.target.grading
    if _common_weights(s, u) is None:
        return False
    w = s.weights
    for mat, dt, ds in ((alpha.a1, u.deg1, s.deg1), (alpha.a0, u.deg0, s.deg0)):
        for (i, j), p in mat.entries.items():
            want = t + dt[i] - ds[j]
            if any(weighted_degree(e, w) != want for e in p.terms):
                return False
    return True


def cone(alpha: MFMorphism) -> MatrixFactorization:
    """Mapping cone: odd part P1' + P0, even part P0' + P1."""
    bad = alpha.cycle_defect()
    if bad:
        raise MfkError(f"cone needs a cycle: {bad}")
    P, Q = alpha.source, alpha.target
    n = P.nvars
    d1 = block([[Q.d1, alpha.a0], [PolyMatrix.zeros(P.r1, Q.r1, n), -P.d0]])
    d0 = block([[Q.d0, alpha.a1], [PolyMatrix.zeros(P.r0, Q.r0, n), -P.d1]])
    g = None
    if morphism_degree_ok(alpha):
        sg, tg = P.grading, Q.grading
        g = Grading(tg.weights, tg.deg1 + sg.deg0, tg.deg0 + tuple(x + sg.d for x in sg.deg1))
    return MatrixFactorization(
        P.f, d1, d0, P.vars, P.mode, g,
        _prefixed("tgt", Q.labels1) + _prefixed("src", P.labels0),
        _prefixed("tgt", Q.labels0) + _prefixed("src", P.labels1),
    )


def trivial_mf(r: int, flavor: str, f: Poly, vars: Sequence[str], mode: str = RATIONAL,
               weights: Optional[WeightSystem] = None) -> MatrixFactorization:
    """(f*I, I) for ``f_then_id`` or (I, f*I) for ``id_then_f``."""
    n = len(vars)
    fI = PolyMatrix.scalar(r, f, n)
    one = PolyMatrix.identity(r, n)
    g = None
    if weights is not None and f:
        d = weights.degree
        if flavor == F_THEN_ID:
            g = Grading(weights, (-d,) * r, (0,) * r)
        else:
            g = Grading(weights, (0,) * r, (0,) * r)
    if flavor == F_THEN_ID:
        return MatrixFactorization(f, fI, one, vars, mode, g)
    if flavor == ID_THEN_F:
        return MatrixFactorization(f, one, fI, vars, mode, g)
    raise ValueError(f"unknown flavor {flavor!r}")


def tensor(P: MatrixFactorization, Q: MatrixFactorization) -> MatrixFactorization:
    """Koszul-signed tensor product over the disjoint union of variables."""
    clash = set(P.vars) & set(Q.vars)
    if clash:
        raise ValidationError(f"variable collision: {sorted(clash)}")
    if P.mode != Q.mode:
        raise ValidationError("scalar mode mismatch")
    n = P.nvars + Q.nvars
    A1, A0 = P.d1.embed(0, n), P.d0.embed(0, n)
    B1, B0 = Q.d1.embed(P.nvars, n), Q.d0.embed(P.nvars, n)
    I1, I0 = PolyMatrix.identity(P.r1, n), PolyMatrix.identity(P.r0, n)
    J1, J0 = PolyMatrix.identity(Q.r1, n), PolyMatrix.identity(Q.r0, n)
    # odd = (P1 x Q0) + (P0 x Q1); even = (P0 x Q0) + (P1 x Q1)
    d1 = block([[kron(A1, J0), kron(I0, B1)], [-kron(I1, B0), kron(A0, J1)]])
    d0 = block([[kron(A0, J0), -kron(I1, B1)], [kron(I0, B0), kron(A1, J1)]])
    f = P.f.embed(0, n) + Q.f.embed(P.nvars, n)
    g = None
    pg, qg = P.grading, Q.grading
    if pg is not None and qg is not None and pg.d == qg.d:
        d = pg.d
        w = WeightSystem(pg.weights.weights + qg.weights.weights, d)
        deg1 = [a + b for a in pg.deg1 for b in qg.deg0] + [a + b for a in pg.deg0 for b in qg.deg1]
        deg0 = [a + b for a in pg.deg0 for b in qg.deg0] + [a + b + d for a in pg.deg1 for b in qg.deg1]
        g = Grading(w, deg1, deg0)
    labels1 = tuple(a + b for a in P.labels1 for b in Q.labels0) + tuple(a + b for a in P.labels0 for b in Q.labels1)
    labels0 = tuple(a + b for a in P.labels0 for b in Q.labels0) + tuple(a + b for a in P.labels1 for b in Q.labels1)
    return MatrixFactorization(f, d1, d0, P.vars + Q.vars, P.mode, g, labels1, labels0)


def tensor_morphism_identity(alpha: MFMorphism, X: MatrixFactorization) -> MFMorphism:
    """alpha (x) id_X between the tensor products with X."""
    P, Q = alpha.source, alpha.target
    n = P.nvars + X.nvars
    a1, a0 = alpha.a1.embed(0, n), alpha.a0.embed(0, n)
    J1, J0 = PolyMatrix.identity(X.r1, n), PolyMatrix.identity(X.r0, n)
    z = PolyMatrix.zeros
    b1 = block([[kron(a1, J0), z(Q.r1 * X.r0, P.r0 * X.r1, n)], [z(Q.r0 * X.r1, P.r1 * X.r0, n), kron(a0, J1)]])
    b0 = block([[kron(a0, J0), z(Q.r0 * X.r0, P.r1 * X.r1, n)], [z(Q.r1 * X.r1, P.r0 * X.r0, n), kron(a1, J1)]])
    return MFMorphism(tensor(P, X), tensor(Q, X), b1, b0)


def _popcount_below(mask: int, k: int) -> int:
    return bin(mask & ((1 << k) - 1)).count("1")


def koszul_stabilization(f: Poly, decomposition: Sequence[tuple], vars: Sequence[str],
                         mode: str = RATIONAL, weights: Optional[WeightSystem] = None) -> MatrixFactorization:
    """E_f on the exterior algebra for f = sum g_k * x_k.

    ``decomposition`` is a list of pairs (g_k, x_k).  Subsets are bitmasks in
    counting order; odd subsets span P1 and even subsets span P0.
    """
    m = len(decomposition)
    nv = len(vars)
    total = Poly.zero(nv)
    for g, x in decomposition:
        total = total + g * x
    if total != f:
        raise MfkError("decomposition identity f = sum g_k x_k fails")
    odd = [S for S in range(1 << m) if bin(S).count("1") % 2]
    even = [S for S in range(1 << m) if not bin(S).count("1") % 2]
    pos = {S: i for i, S in enumerate(odd)}
    pos.update({S: i for i, S in enumerate(even)})
    e1, e0 = {}, {}
    for S in range(1 << m):
        dst = e1 if bin(S).count("1") % 2 else e0
        col = pos[S]
        for k in range(m):
            sgn = -1 if _popcount_below(S, k) % 2 else 1
            g, x = decomposition[k]
            if S >> k & 1:
                T, c = S & ~(1 << k), x
            else:
                T, c = S | (1 << k), g
            if c:
                key = (pos[T], col)
                v = dst.get(key, Poly.zero(nv)) + (c if sgn == 1 else -c)
                dst[key] = v
    d1 = PolyMatrix(len(even), len(odd), nv, e1)
    d0 = PolyMatrix(len(odd), len(even), nv, e0)
    grading = None
    if weights is not None:
        degs = [poly_weighted_degree(x, weights) for _, x in decomposition]
        if all(dg is not None for dg in degs):
            d = weights.degree

            def deg(S):
                bits = [k for k in range(m) if S >> k & 1]
                return -sum(degs[k] for k in bits) + (len(bits) // 2) * d

            grading = Grading(weights, [deg(S) for S in odd], [deg(S) for S in even])
    labels1 = tuple((("ext", S),) for S in odd)
    labels0 = tuple((("ext", S),) for S in even)
    return MatrixFactorization(f, d1, d0, vars, mode, grading, labels1, labels0)


def koszul_of_variables(f: Poly, gs: Sequence[Poly], vars: Sequence[str], mode: str = RATIONAL,
                        weights: Optional[WeightSystem] = None) -> MatrixFactorization:
    """E_f for f = sum g_i x_i with x_i the ring variables."""
    n = len(vars)
    if len(gs) != n:
        raise ValueError("need one g_i per variable")
    return koszul_stabilization(f, [(g, Poly.var(i, n)) for i, g in enumerate(gs)], vars, mode, weights)


def coker_presentation(P: MatrixFactorization) -> PolyMatrix:
    """d1, read as a presentation of coker(d1) over k[x]/(f)."""
    return P.d1


def rename_vars(P: MatrixFactorization, names: Sequence[str]) -> MatrixFactorization:
    if len(names) != P.nvars:
        raise ValueError("wrong number of names")
    return replace(P, vars=tuple(names))


def infer_grading(P: MatrixFactorization, weights: WeightSystem) -> Optional[Grading]:
    """Find degree vectors making P graded, or None if impossible."""
    d = weights.degree
    edges: dict = {}
    for mat, rpar, cpar, off in ((P.d1, 0, 1, 0), (P.d0, 1, 0, -d)):
        for (i, j), p in mat.entries.items():
            delta = poly_weighted_degree(p, weights)
            if delta is None:
                return None
            # deg[row] - deg[col] = delta + off
            edges.setdefault((rpar, i), []).append(((cpar, j), -(delta + off)))
            edges.setdefault((cpar, j), []).append(((rpar, i), delta + off))
    deg = {}
    for start in [(1, j) for j in range(P.r1)] + [(0, i) for i in range(P.r0)]:
        if start in deg:
            continue
        deg[start] = 0
        todo = deque([start])
        while todo:
            u = todo.popleft()
            for v, diff in edges.get(u, ()):
                want = deg[u] + diff
                if v not in deg:
                    deg[v] = want
                    todo.append(v)
                elif deg[v] != want:
                    return None
    return Grading(weights, [deg[(1, j)] for j in range(P.r1)], [deg[(0, i)] for i in range(P.r0)])
