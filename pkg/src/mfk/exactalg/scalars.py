"""Exact scalars: rationals (``int``/``Fraction``) and Gaussian rationals.

Rational scalars are plain Python ``int`` or ``fractions.Fraction`` values.
Gaussian rationals ``a + b*i`` use :class:`Gaussian`; a Gaussian whose
imaginary part vanishes is always collapsed back to a rational by
:func:`canon`, so every value has exactly one representation.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

RATIONAL = "rational"
GAUSSIAN = "gaussian"
MODES = (RATIONAL, GAUSSIAN)


def _q(x):
    """Normalise a rational to ``int`` when integral, else a reduced Fraction."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _q(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


class Gaussian:
    """An element ``re + im*i`` of Q(i) with ``im != 0`` in canonical use."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, (int, Fraction)):
            return Gaussian(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return canon(Gaussian(self.re + o.re, self.im + o.im))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return canon(Gaussian(self.re - o.re, self.im - o.im))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return canon(Gaussian(self.re * o.re - self.im * o.im,
                              self.re * o.im + self.im * o.re))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * Gaussian(o.re, -o.im)
        if isinstance(num, Gaussian):
            return canon(Gaussian(Fraction(num.re) / n, Fraction(num.im) / n))
        return _q(Fraction(num) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        out, base = 1, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return canon(Gaussian(self.re, -self.im))

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


I = Gaussian(0, 1)


def canon(x):
    """Canonical form: rationals as int/Fraction, Q(i) with nonzero imaginary part as Gaussian."""
    if isinstance(x, Gaussian):
        if x.im == 0:
            return x.re
        return x
    return _q(x)


def is_gaussian(x) -> bool:
    return isinstance(x, Gaussian) and x.im != 0


def div(a, b):
    """Exact quotient a/b, keeping integers as integers when possible."""
    if isinstance(a, int) and isinstance(b, int):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    if isinstance(a, Gaussian) or isinstance(b, Gaussian):
        return canon(Gaussian._coerce(a) / b)
    return _q(Fraction(a) / Fraction(b))


def conj(x):
    return x.conjugate() if isinstance(x, Gaussian) else x


def scalar_mode(x) -> str:
    return GAUSSIAN if is_gaussian(x) else RATIONAL


def parse_scalar(obj):
    """Scalars in JSON: ints, "p/q" strings, or [re, im] pairs."""
    if isinstance(obj, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        from .parse import parse_poly
        p = parse_poly(obj, [], mode=GAUSSIAN)
        if not p.is_constant():
            raise ValueError(f"not a scalar: {obj!r}")
        return p.constant_coefficient()
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return canon(Gaussian(parse_scalar(obj[0]), parse_scalar(obj[1])))
    raise TypeError(f"cannot read scalar from {obj!r}")


def _format_rational(x) -> str:
    x = _q(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    x = canon(x)
    if not isinstance(x, Gaussian):
        return _format_rational(x)
    re, im = x.re, x.im
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{_format_rational(im)}*i"
    if re == 0:
        return ims
    if ims.startswith("-"):
        return f"{_format_rational(re)}{ims}"
    return f"{_format_rational(re)}+{ims}"


def scalar_to_json(x):
    x = canon(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _format_rational(x)
    return [scalar_to_json(x.re), scalar_to_json(x.im)]
