"""Splitting off trivial rank-one summands at unit entries."""
from __future__ import annotations

from dataclasses import dataclass

from ..exactalg.matrix import PolyMatrix
from ..exactalg.poly import Poly
from ..exactalg.scalars import div
from .factorization import Grading, MatrixFactorization, MFMorphism, OddMap


@dataclass
class StripResult:
    """``mf`` with maps alpha: P -> mf, beta: mf -> P, and an odd h on P.

    alpha*beta is the identity and beta*alpha - id = d h + h d.
    """

    mf: MatrixFactorization
    alpha: MFMorphism
    beta: MFMorphism
    h: OddMap
    removed: int


def _dense(m: PolyMatrix):
    return m.rows()


def _find_unit(M, rows_alive, cols_alive):
    for i in rows_alive:
        row = M[i]
        for j in cols_alive:
            if row[j].is_unit():
                return i, j
    return None


class _State:
    def __init__(self, P: MatrixFactorization):
        n = P.nvars
        self.n = n
        # index 1: d1 (rows in space 0, cols in space 1); index 0: d0 (rows 1, cols 0)
        self.D = {1: _dense(P.d1), 0: _dense(P.d0)}
        self.G = {0: _dense(PolyMatrix.identity(P.r0, n)), 1: _dense(PolyMatrix.identity(P.r1, n))}
        self.Ginv = {0: _dense(PolyMatrix.identity(P.r0, n)), 1: _dense(PolyMatrix.identity(P.r1, n))}

    def row_op(self, m, a, i, c):
        """In matrix D[m] (rows in space R = 1 - m): row a += c*row i."""
        R = 1 - m
        M, N, G, Gi = self.D[m], self.D[1 - m], self.G[R], self.Ginv[R]
        for X in (M, G):
            X[a] = [p + c * q for p, q in zip(X[a], X[i])]
        for X in (N, Gi):
            for row in X:
                row[i] = row[i] - c * row[a]

    def col_op(self, m, b, j, c):
        """In matrix D[m] (cols in space C = m): col b += c*col j."""
        C = m
        M, N, G, Gi = self.D[m], self.D[1 - m], self.G[C], self.Ginv[C]
        for X in (M, Gi):
            for row in X:
                row[b] = row[b] + c * row[j]
        for X in (N, G):
            X[j] = [p - c * q for p, q in zip(X[j], X[b])]


def strip_trivial_summands(P: MatrixFactorization) -> StripResult:
    n = P.nvars
    st = _State(P)
    alive = {0: list(range(P.r0)), 1: list(range(P.r1))}
    H = {1: {}, 0: {}}  # contraction pieces in the new basis
    removed = 0
    while True:
        hit = None
        for m in (1, 0):
            found = _find_unit(st.D[m], alive[1 - m], alive[m])
            if found:
                hit = (m, found)
                break
        if hit is None:
            break
        m, (i, j) = hit
        M = st.D[m]
        u = M[i][j].constant_coefficient()
        for a in alive[1 - m]:
            if a != i and M[a][j]:
                st.row_op(m, a, i, M[a][j].scale_div(-u))
        for b in alive[m]:
            if b != j and M[i][b]:
                st.col_op(m, b, j, M[i][b].scale_div(-u))
        # the trivial summand has D[m] = u on (i, j); contract it by 1/u the other way
        H[m][(j, i)] = Poly.const(div(1, u), n)
        alive[1 - m].remove(i)
        alive[m].remove(j)
        removed += 1
    k0, k1 = alive[0], alive[1]
    D1 = PolyMatrix.from_rows(st.D[1], n, P.r1)
    D0 = PolyMatrix.from_rows(st.D[0], n, P.r0)
    g = P.grading
    if g is not None:
        g = Grading(g.weights, [g.deg1[j] for j in k1], [g.deg0[i] for i in k0])
    Q = MatrixFactorization(P.f, D1.submatrix(k0, k1), D0.submatrix(k1, k0), P.vars, P.mode, g,
                            tuple(P.labels1[j] for j in k1), tuple(P.labels0[i] for i in k0))
    G0 = PolyMatrix.from_rows(st.G[0], n, P.r0)
    G1 = PolyMatrix.from_rows(st.G[1], n, P.r1)
    G0i = PolyMatrix.from_rows(st.Ginv[0], n, P.r0)
    G1i = PolyMatrix.from_rows(st.Ginv[1], n, P.r1)
    alpha = MFMorphism(P, Q, G1.submatrix(k1, range(P.r1)), G0.submatrix(k0, range(P.r0)))
    beta = MFMorphism(Q, P, G1i.submatrix(range(P.r1), k1), G0i.submatrix(range(P.r0), k0))
    # a pivot in d_m maps space m to 1-m; its contraction goes back from 1-m to m
    h_to1 = PolyMatrix(P.r1, P.r0, n, H[1])   # P0 -> P1, from d1 pivots
    h_to0 = PolyMatrix(P.r0, P.r1, n, H[0])   # P1 -> P0, from d0 pivots
    b1 = -(G0i @ h_to0 @ G1)
    b0 = -(G1i @ h_to1 @ G0)
    h = OddMap(P, P, b1, b0)
    return StripResult(Q, alpha, beta, h, removed)
