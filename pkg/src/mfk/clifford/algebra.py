"""Clifford algebras of diagonal forms, with the convention v^2 = q(v)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import MfkError
from ..exactalg.scalars import GAUSSIAN, RATIONAL, canon, is_gaussian


@dataclass(frozen=True)
class DiagonalForm:
    """q = a_1 x_1^2 + ... + a_n x_n^2."""

    coeffs: tuple
    mode: str = RATIONAL

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(canon(a) for a in self.coeffs))
        if any(a == 0 for a in self.coeffs):
            raise MfkError("diagonal form coefficients must be nonzero")
        if self.mode == RATIONAL and any(is_gaussian(a) for a in self.coeffs):
            raise MfkError("gaussian coefficient in a rational-mode form")

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @classmethod
    def negative_definite(cls, n: int, mode: str = RATIONAL) -> "DiagonalForm":
        return cls((-1,) * n, mode)

    def direct_sum(self, other: "DiagonalForm") -> "DiagonalForm":
        mode = GAUSSIAN if GAUSSIAN in (self.mode, other.mode) else RATIONAL
        return DiagonalForm(self.coeffs + other.coeffs, mode)

    def negated(self) -> "DiagonalForm":
        return DiagonalForm(tuple(-a for a in self.coeffs), self.mode)


def blade_product(S: int, T: int, q: DiagonalForm):
    """e_S * e_T = sign * (prod of a_k over S & T) * e_{S ^ T} for bitmask blades."""
    swaps = 0
    t = T
    while t:
        low = t & -t
        # elements of S above this element of T must pass it
        swaps += bin(S & ~((low << 1) - 1)).count("1")
        t ^= low
    c = -1 if swaps % 2 else 1
    both = S & T
    k = 0
    while both:
        if both & 1:
            c = c * q.coeffs[k]
        both >>= 1
        k += 1
    return S ^ T, c


class CliffordElement:
    """Sum of c_S e_S over bitmask blades S of {1..n}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {S: canon(c) for S, c in (terms or {}).items() if c != 0}
        if any(S >> n for S in self.terms):
            raise MfkError("blade outside the generator range")

    @classmethod
    def scalar(cls, n: int, c) -> "CliffordElement":
        return cls(n, {0: c})

    @classmethod
    def generator(cls, n: int, i: int) -> "CliffordElement":
        return cls(n, {1 << i: 1})

    @classmethod
    def blade(cls, n: int, indices: Sequence[int], c=1) -> "CliffordElement":
        """c * e_{i1} e_{i2} ... (indices distinct, any order)."""
        out = cls.scalar(n, c)
        dummy = DiagonalForm((1,) * n) if n else None
        for i in indices:
            S, sgn = blade_product(next(iter(out.terms)), 1 << i, dummy)
            out = cls(n, {S: sgn * next(iter(out.terms.values()))})
        return out

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        out = dict(self.terms)
        for S, c in other.terms.items():
            out[S] = out.get(S, 0) + c
        return CliffordElement(self.n, out)

    def __neg__(self):
        return CliffordElement(self.n, {S: -c for S, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __repr__(self):
        parts = [f"{c}*e{{{','.join(str(k + 1) for k in range(self.n) if S >> k & 1)}}}"
                 for S, c in sorted(self.terms.items())]
        return " + ".join(parts) or "0"


def clifford_multiply(x: CliffordElement, y: CliffordElement, q: DiagonalForm) -> CliffordElement:
    if not (x.n == y.n == q.n):
        raise MfkError("dimension mismatch between elements and form")
    out: dict = {}
    for S, a in x.terms.items():
        for T, b in y.terms.items():
            U, c = blade_product(S, T, q)
            out[U] = out.get(U, 0) + c * a * b
    return CliffordElement(q.n, out)


@dataclass(frozen=True)
class AlgebraType:
    """Mat_size(base), or Mat_size(base) + Mat_size(base) when ``double``."""

    base: str
    size: int
    double: bool

    def __str__(self):
        one = f"Mat{self.size}({self.base})"
        return f"{one}+{one}" if self.double else one

    def dimension(self) -> int:
        b = {"R": 1, "C": 2, "H": 4}[self.base]
        return b * self.size * self.size * (2 if self.double else 1)


# (number of +1 squares - number of -1 squares) mod 8 -> (base, double)
_TABLE = {0: ("R", False), 1: ("R", True), 2: ("R", False), 3: ("C", False),
          4: ("H", False), 5: ("H", True), 6: ("H", False), 7: ("C", False)}


def classify(q: DiagonalForm) -> AlgebraType:
    """Ungraded type of Cliff(q) over the reals for a unit form."""
    if q.mode != RATIONAL or any(a not in (1, -1) for a in q.coeffs):
        raise MfkError("classification needs a real form with coefficients +1 or -1")
    p = sum(1 for a in q.coeffs if a == 1)
    m = q.n - p
    base, double = _TABLE[(p - m) % 8]
    b = {"R": 1, "C": 2, "H": 4}[base] * (2 if double else 1)
    size2 = (1 << q.n) // b
    size = math.isqrt(size2)
    if size * size != size2:
        raise AssertionError("classification table inconsistent with dimension")
    return AlgebraType(base, size, double)
