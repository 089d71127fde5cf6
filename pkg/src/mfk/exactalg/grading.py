"""Quasi-homogeneous weights, monomial enumeration and the Milnor number."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..errors import NonIsolatedSingularity, NotQuasiHomogeneous
from .linalg import Eliminator
from .poly import Poly


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive integers")
        if int(self.degree) <= 0:
            raise ValueError("degree must be a positive integer")
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def max_weight(self) -> int:
        return max(self.weights, default=1)

    def extend(self, more: Sequence[int]) -> "WeightSystem":
        return WeightSystem(self.weights + tuple(more), self.degree)


def weighted_degree(e: Sequence[int], w) -> int:
    weights = w.weights if isinstance(w, WeightSystem) else tuple(w)
    if len(e) != len(weights):
        raise ValueError(f"exponent of length {len(e)} against {len(weights)} weights")
    return sum(a * b for a, b in zip(e, weights))


def poly_weighted_degree(p: Poly, w) -> int | None:
    """The common weighted degree of a nonzero homogeneous polynomial, else None."""
    degs = {weighted_degree(e, w) for e in p.terms}
    return degs.pop() if len(degs) == 1 else None


def is_homogeneous_of(p: Poly, w, degree: int) -> bool:
    return all(weighted_degree(e, w) == degree for e in p.terms)


def is_quasi_homogeneous(f: Poly, w: WeightSystem) -> bool:
    if f.nvars != w.nvars:
        raise ValueError("weight count does not match variable count")
    return is_homogeneous_of(f, w, w.degree)


@lru_cache(maxsize=None)
def _monomials(weights: tuple, degree: int) -> tuple:
    if degree < 0:
        return ()
    if not weights:
        return ((),) if degree == 0 else ()
    w0, rest = weights[0], weights[1:]
    out = []
    for k in range(degree // w0, -1, -1):
        for tail in _monomials(rest, degree - k * w0):
            out.append((k,) + tail)
    return tuple(out)


def monomials_of_degree(w, degree: int) -> tuple:
    """All exponent vectors of the given weighted degree, in a fixed order."""
    weights = w.weights if isinstance(w, WeightSystem) else tuple(w)
    return _monomials(weights, degree)


def _shift(e, m):
    return tuple(a + b for a, b in zip(e, m))


def jacobian_quotient_dims(f: Poly, w: WeightSystem) -> dict:
    """Degreewise dimensions of k[x]/(df), checked for finiteness."""
    if not is_quasi_homogeneous(f, w):
        raise NotQuasiHomogeneous("f is not quasi-homogeneous for the given weights")
    if f.is_zero():
        raise NonIsolatedSingularity("f = 0 has no isolated singularity")
    n = f.nvars
    partials = [(f.derivative(i), w.degree - w.weights[i]) for i in range(n)]
    partials = [(g, dg) for g, dg in partials if not g.is_zero()]
    socle = sum(w.degree - 2 * wi for wi in w.weights)
    top = max(socle, 0) + w.max_weight
    dims = {}
    for j in range(top + 1):
        monos = monomials_of_degree(w, j)
        el = Eliminator()
        for g, dg in partials:
            for m in monomials_of_degree(w, j - dg):
                el.add({_shift(e, m): c for e, c in g.terms.items()})
        dim = len(monos) - el.rank
        if dim and j > socle:
            raise NonIsolatedSingularity(
                f"Jacobian quotient is nonzero in degree {j}, past the socle degree {socle}"
            )
        if dim:
            dims[j] = dim
    return dims


def milnor_number(f: Poly, w: WeightSystem) -> int:
    mu = sum(jacobian_quotient_dims(f, w).values())
    expected = Fraction(1)
    for wi in w.weights:
        expected *= Fraction(w.degree - wi, wi)
    if expected != mu:
        raise AssertionError(f"degreewise count {mu} disagrees with product formula {expected}")
    return mu
