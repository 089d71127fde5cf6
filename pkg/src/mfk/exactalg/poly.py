"""Sparse multivariate polynomials with exact coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import Gaussian, canon, format_scalar, is_gaussian, div

Monomial = tuple


def _is_negative(c) -> bool:
    if isinstance(c, Gaussian):
        return c.re < 0 or (c.re == 0 and c.im < 0)
    return c < 0


def _glex_key(e: Monomial):
    return (sum(e), e)


class Poly:
    """A polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero scalars.  Instances are treated
    as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                c = canon(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        c = canon(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, i: int, nvars: int, coeff=1) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): canon(coeff)} if coeff else {})

    @classmethod
    def monomial(cls, e: Sequence[int], coeff=1) -> "Poly":
        return cls(len(e), {tuple(e): coeff})

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coefficient(self):
        return self.terms.get((0,) * self.nvars, 0)

    def is_unit(self) -> bool:
        """Nonzero constant."""
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def has_gaussian_coefficients(self) -> bool:
        return any(is_gaussian(c) for c in self.terms.values())

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_linear_form(self) -> bool:
        return all(sum(e) == 1 for e in self.terms)

    # arithmetic
    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in rings with different variable counts")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Gaussian)):
            return Poly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Gaussian)):
            c0 = canon(other)
            if not c0:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: c * c0 for e, c in self.terms.items()})
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return Poly.zero(self.nvars)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def scale_div(self, c) -> "Poly":
        return Poly._raw(self.nvars, {e: div(v, c) for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Gaussian)):
            return self == Poly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # structure
    def derivative(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly._raw(self.nvars, out)

    def embed(self, offset: int, nvars: int) -> "Poly":
        """Re-express in a ring of ``nvars`` variables, own variables starting at ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("embedding does not fit")
        pre, post = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return Poly._raw(nvars, {pre + e + post: c for e, c in self.terms.items()})

    def linear_coefficients(self) -> list:
        """Coefficients of x_1..x_n of a linear form."""
        if not self.is_linear_form():
            raise ValueError("not a linear form")
        out = [0] * self.nvars
        for e, c in self.terms.items():
            out[e.index(1)] = c
        return out

    def sorted_terms(self):
        """Terms in graded-lex order (highest first), variables in declared order."""
        return sorted(self.terms.items(), key=lambda t: _glex_key(t[0]), reverse=True)

    def to_str(self, names: Sequence[str]) -> str:
        if len(names) != self.nvars:
            raise ValueError("wrong number of variable names")
        if not self.terms:
            return "0"
        out = ""
        for e, c in self.sorted_terms():
            neg = _is_negative(c)
            a = -c if neg else c
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = format_scalar(a)
            if isinstance(a, Gaussian) and a.re != 0:
                cs = f"({cs})"
            if not mono:
                s = cs
            elif a == 1:
                s = mono
            else:
                s = f"{cs}*{mono}"
            if not out:
                out = "-" + s if neg else s
            else:
                out += (" - " if neg else " + ") + s
        return out

    def __repr__(self):
        return f"Poly({self.to_str([f'x{i + 1}' for i in range(self.nvars)])})"


def poly_sum(polys: Iterable[Poly], nvars: int) -> Poly:
    out = {}
    for p in polys:
        for e, c in p.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return Poly._raw(nvars, out)
