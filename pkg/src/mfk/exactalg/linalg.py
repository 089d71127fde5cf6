"""Exact sparse linear algebra over Q and Q(i).

Vectors are dicts mapping sortable keys to nonzero scalars.  The eliminator
keeps one pivot row per leading key, where the lead is the *largest* key of a
row.  Reducing against leads taken from the top keeps pivot rows short on the
block-structured systems produced by graded Hom complexes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .scalars import canon, div

Vec = dict


def _normalize(vec: Vec, lead):
    c = vec[lead]
    if c == 1:
        return vec
    if c == -1:
        return {k: -v for k, v in vec.items()}
    return {k: div(v, c) for k, v in vec.items()}


def axpy(dst: Vec, c, src: Vec) -> None:
    """dst += c*src in place, dropping zeros."""
    for k, v in src.items():
        w = dst.get(k, 0) + c * v
        if w:
            dst[k] = w
        else:
            del dst[k]


class Eliminator:
    """Incremental exact Gaussian elimination on sparse vectors.

    With ``track=True`` every pivot remembers which inserted vectors it is a
    combination of, so dependencies (kernel vectors) and solutions can be read
    off.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict = {}
        self.combos: dict = {}
        self.kernel: list[Vec] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Vec, combo: Vec | None = None):
        vec = {k: v for k, v in vec.items() if v}
        pivots = self.pivots
        while vec:
            lead = max(vec)
            row = pivots.get(lead)
            if row is None:
                break
            c = vec[lead]
            axpy(vec, -c, row)
            if combo is not None:
                axpy(combo, -c, self.combos[lead])
        return vec, combo

    def add(self, vec: Vec, label: Hashable = None) -> bool:
        """Insert ``vec``; return True if it was independent of earlier ones."""
        combo = {label: 1} if self.track else None
        vec, combo = self.reduce(vec, combo)
        if not vec:
            if self.track:
                self.kernel.append(combo)
            return False
        lead = max(vec)
        c = vec[lead]
        self.pivots[lead] = _normalize(vec, lead)
        if self.track:
            self.combos[lead] = combo if c == 1 else {k: div(v, c) for k, v in combo.items()}
        return True

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)[0]

    def solve(self, vec: Vec):
        """Return a combination of inserted labels summing to ``vec``, or None."""
        if not self.track:
            raise ValueError("solve needs a tracking eliminator")
        rest, combo = self.reduce(vec, {})
        if rest:
            return None
        return {k: -v for k, v in combo.items() if v}


def span_rank(vectors: Iterable[Vec]) -> int:
    el = Eliminator()
    for v in vectors:
        el.add(v)
    return el.rank


@dataclass
class GradedSolveProblem:
    """A matrix given column by column as sparse vectors.

    ``columns[j]`` is the image of the j-th unknown; ``col_labels`` and
    ``row_labels`` carry (matrix unit, monomial) bookkeeping for callers.
    """

    columns: list
    col_labels: list = field(default_factory=list)
    row_labels: list = field(default_factory=list)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "GradedSolveProblem":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = []
        for j in range(ncols):
            cols.append({i: canon(rows[i][j]) for i in range(nrows) if rows[i][j] != 0})
        return cls(cols, list(range(ncols)), list(range(nrows)))

    @property
    def ncols(self) -> int:
        return len(self.columns)


def graded_component_rank(problem: GradedSolveProblem):
    """Exact rank and kernel basis (dicts column index -> scalar) of a problem."""
    el = Eliminator(track=True)
    for j, col in enumerate(problem.columns):
        el.add(col, j)
    return el.rank, el.kernel


def to_dense(vec: Vec, n: int) -> list:
    return [vec.get(j, 0) for j in range(n)]


def dense_rank(rows: Sequence[Sequence]) -> int:
    return span_rank({j: canon(x) for j, x in enumerate(r) if x != 0} for r in rows)


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of {v : rows·v = 0} as dense lists."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    problem = GradedSolveProblem.from_dense(rows) if rows else GradedSolveProblem([{} for _ in range(ncols)])
    _, kernel = graded_component_rank(problem)
    return [to_dense(k, ncols) for k in kernel]


def solve_dense(rows: Sequence[Sequence], rhs: Sequence):
    """One exact solution of rows·v = rhs, or None."""
    ncols = len(rows[0]) if rows else 0
    problem = GradedSolveProblem.from_dense(rows) if rows else GradedSolveProblem([])
    el = Eliminator(track=True)
    for j, col in enumerate(problem.columns):
        el.add(col, j)
    combo = el.solve({i: canon(b) for i, b in enumerate(rhs) if b != 0})
    return None if combo is None else to_dense(combo, ncols)
