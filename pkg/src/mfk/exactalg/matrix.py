"""Sparse matrices with polynomial entries."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly
from .scalars import Gaussian

_SCALARS = (int, Fraction, Gaussian)


class PolyMatrix:
    """An ``nrows x ncols`` matrix over k[x_1..x_nvars], stored sparsely."""

    __slots__ = ("nrows", "ncols", "nvars", "entries")

    def __init__(self, nrows: int, ncols: int, nvars: int, entries: dict | None = None):
        self.nrows, self.ncols, self.nvars = nrows, ncols, nvars
        clean = {}
        for (i, j), p in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside a {nrows}x{ncols} matrix")
            if isinstance(p, _SCALARS):
                p = Poly.const(p, nvars)
            if p.nvars != nvars:
                raise ValueError("entry lives in the wrong polynomial ring")
            if p:
                clean[(i, j)] = p
        self.entries = clean

    @classmethod
    def _raw(cls, nrows, ncols, nvars, entries):
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.nvars, m.entries = nrows, ncols, nvars, entries
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], nvars: int, ncols: int | None = None) -> "PolyMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(nrows, ncols, nvars, {(i, j): p for i, r in enumerate(rows) for j, p in enumerate(r)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int, nvars: int) -> "PolyMatrix":
        return cls._raw(nrows, ncols, nvars, {})

    @classmethod
    def scalar(cls, n: int, c, nvars: int) -> "PolyMatrix":
        """c times the n x n identity; c may be a scalar or a Poly."""
        p = c if isinstance(c, Poly) else Poly.const(c, nvars)
        if not p:
            return cls.zeros(n, n, nvars)
        return cls._raw(n, n, nvars, {(i, i): p for i in range(n)})

    @classmethod
    def identity(cls, n: int, nvars: int) -> "PolyMatrix":
        return cls.scalar(n, 1, nvars)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Poly:
        p = self.entries.get(ij)
        return p if p is not None else Poly.zero(self.nvars)

    def rows(self) -> list:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.nvars == other.nvars and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def _check_same(self, other):
        if self.shape != other.shape or self.nvars != other.nvars:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same(other)
        out = dict(self.entries)
        for k, p in other.entries.items():
            q = out[k] + p if k in out else p
            if q:
                out[k] = q
            else:
                out.pop(k, None)
        return PolyMatrix._raw(self.nrows, self.ncols, self.nvars, out)

    def __neg__(self):
        return PolyMatrix._raw(self.nrows, self.ncols, self.nvars, {k: -p for k, p in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PolyMatrix":
        out = {}
        for k, p in self.entries.items():
            q = p * c
            if q:
                out[k] = q
        return PolyMatrix._raw(self.nrows, self.ncols, self.nvars, out)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows or self.nvars != other.nvars:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        brows: dict = {}
        for (k, j), p in other.entries.items():
            brows.setdefault(k, []).append((j, p))
        acc: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in brows.get(k, ()):
                t = a * b
                if (i, j) in acc:
                    acc[(i, j)] = acc[(i, j)] + t
                else:
                    acc[(i, j)] = t
        out = {k: p for k, p in acc.items() if p}
        return PolyMatrix._raw(self.nrows, other.ncols, self.nvars, out)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix._raw(self.ncols, self.nrows, self.nvars, {(j, i): p for (i, j), p in self.entries.items()})

    def embed(self, offset: int, nvars: int) -> "PolyMatrix":
        return PolyMatrix._raw(self.nrows, self.ncols, nvars,
                               {k: p.embed(offset, nvars) for k, p in self.entries.items()})

    def permuted(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        """Matrix whose (a, b) entry is self[rows[a], cols[b]]."""
        rinv = {r: a for a, r in enumerate(rows)}
        cinv = {c: b for b, c in enumerate(cols)}
        out = {(rinv[i], cinv[j]): p for (i, j), p in self.entries.items() if i in rinv and j in cinv}
        return PolyMatrix._raw(len(rows), len(cols), self.nvars, out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return self.permuted(rows, cols)

    def max_degree(self) -> int:
        return max((p.degree() for p in self.entries.values()), default=-1)

    def is_scalar_multiple_of_identity(self, f: Poly) -> bool:
        if self.nrows != self.ncols:
            return False
        if not f:
            return not self.entries
        if len(self.entries) != self.nrows:
            return False
        return all(i == j and p == f for (i, j), p in self.entries.items())

    def first_difference(self, other: "PolyMatrix"):
        """First (i, j) where two same-shaped matrices differ, or None."""
        for k in sorted(set(self.entries) | set(other.entries)):
            if self[k] != other[k]:
                return k
        return None

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, {len(self.entries)} nonzero)"


def block(grid: Sequence[Sequence[PolyMatrix]]) -> PolyMatrix:
    """Assemble a block matrix; every block row/column must have consistent sizes."""
    heights = [row[0].nrows for row in grid]
    widths = [m.ncols for m in grid[0]] if grid else []
    nvars = grid[0][0].nvars
    out = {}
    r0 = 0
    for bi, row in enumerate(grid):
        c0 = 0
        for bj, m in enumerate(row):
            if m.nrows != heights[bi] or m.ncols != widths[bj] or m.nvars != nvars:
                raise ValueError("inconsistent block sizes")
            for (i, j), p in m.entries.items():
                out[(r0 + i, c0 + j)] = p
            c0 += widths[bj]
        r0 += heights[bi]
    return PolyMatrix._raw(sum(heights), sum(widths), nvars, out)


def kron(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Kronecker product with a-major indexing: (i*b.nrows + k, j*b.ncols + l)."""
    if a.nvars != b.nvars:
        raise ValueError("kron of matrices over different rings")
    out = {}
    for (i, j), p in a.entries.items():
        for (k, l), q in b.entries.items():
            t = p * q
            if t:
                out[(i * b.nrows + k, j * b.ncols + l)] = t
    return PolyMatrix._raw(a.nrows * b.nrows, a.ncols * b.ncols, a.nvars, out)


def direct_sum_matrix(mats: Iterable[PolyMatrix]) -> PolyMatrix:
    mats = list(mats)
    nvars = mats[0].nvars
    grid = [[m if i == j else PolyMatrix.zeros(m.nrows, n.ncols, nvars) for j, n in enumerate(mats)]
            for i, m in enumerate(mats)]
    return block(grid)
