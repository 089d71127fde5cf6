"""Sparse matrices over exact scalars."""
from __future__ import annotations

from typing import Sequence

from .scalars import canon


class SMat:
    """``nrows x ncols`` scalar matrix stored as {row: {col: value}}."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict | None = None):
        self.nrows, self.ncols = nrows, ncols
        self.rows = {}
        for i, r in (rows or {}).items():
            clean = {j: canon(v) for j, v in r.items() if v != 0}
            if clean:
                self.rows[i] = clean

    @classmethod
    def _raw(cls, nrows, ncols, rows):
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.rows = nrows, ncols, rows
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: int | None = None) -> "SMat":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        rows = {i: {j: canon(v) for j, v in enumerate(r) if v} for i, r in enumerate(data)}
        return cls(nrows, ncols, {i: r for i, r in rows.items() if r})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SMat":
        return cls._raw(nrows, ncols, {})

    @classmethod
    def scalar(cls, n: int, c) -> "SMat":
        c = canon(c)
        return cls._raw(n, n, {i: {i: c} for i in range(n)} if c else {})

    @classmethod
    def identity(cls, n: int) -> "SMat":
        return cls.scalar(n, 1)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def get(self, i, j):
        return self.rows.get(i, {}).get(j, 0)

    def to_dense(self) -> list:
        return [[self.get(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def entries(self):
        for i, r in self.rows.items():
            for j, v in r.items():
                yield i, j, v

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        if not isinstance(other, SMat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(sorted((i, tuple(sorted(r.items()))) for i, r in self.rows.items()))))

    def __add__(self, other: "SMat") -> "SMat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            dst = out.setdefault(i, {})
            for j, v in r.items():
                w = dst.get(j, 0) + v
                if w:
                    dst[j] = w
                else:
                    dst.pop(j, None)
            if not dst:
                del out[i]
        return SMat._raw(self.nrows, self.ncols, out)

    def __neg__(self):
        return SMat._raw(self.nrows, self.ncols, {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SMat":
        c = canon(c)
        if not c:
            return SMat.zeros(self.nrows, self.ncols)
        return SMat._raw(self.nrows, self.ncols, {i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()})

    def __matmul__(self, other: "SMat") -> "SMat":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orow = other.rows
        out = {}
        for i, r in self.rows.items():
            acc: dict = {}
            for k, a in r.items():
                rk = orow.get(k)
                if not rk:
                    continue
                for j, b in rk.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return SMat._raw(self.nrows, other.ncols, out)

    def transpose(self) -> "SMat":
        out: dict = {}
        for i, j, v in self.entries():
            out.setdefault(j, {})[i] = v
        return SMat._raw(self.ncols, self.nrows, out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SMat":
        cinv = {c: b for b, c in enumerate(cols)}
        out = {}
        for a, i in enumerate(rows):
            r = self.rows.get(i)
            if r:
                nr = {cinv[j]: v for j, v in r.items() if j in cinv}
                if nr:
                    out[a] = nr
        return SMat._raw(len(rows), len(cols), out)

    def __repr__(self):
        return f"SMat({self.nrows}x{self.ncols}, {sum(len(r) for r in self.rows.values())} nonzero)"


def skron(a: SMat, b: SMat) -> SMat:
    out: dict = {}
    for i, j, v in a.entries():
        for k, l, w in b.entries():
            out.setdefault(i * b.nrows + k, {})[j * b.ncols + l] = v * w
    return SMat._raw(a.nrows * b.nrows, a.ncols * b.ncols, out)


def sblock(grid: Sequence[Sequence[SMat]]) -> SMat:
    heights = [row[0].nrows for row in grid]
    widths = [m.ncols for m in grid[0]]
    out: dict = {}
    r0 = 0
    for bi, row in enumerate(grid):
        c0 = 0
        for bj, m in enumerate(row):
            if m.shape != (heights[bi], widths[bj]):
                raise ValueError("inconsistent block sizes")
            for i, j, v in m.entries():
                out.setdefault(r0 + i, {})[c0 + j] = v
            c0 += widths[bj]
        r0 += heights[bi]
    return SMat._raw(sum(heights), sum(widths), out)
