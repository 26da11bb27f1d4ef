"""Scalar coefficient types for exact and floating computation.

The library is generic over its scalars.  Exact media use
``fractions.Fraction``; floating media use ``float`` or ``complex``.  Three
small exact extension types cover the places where paper fixtures leave the
rationals:

* :class:`GaussianRational` -- exact complex rationals (media with complex
  coefficients, where trace/determinant identities must hold exactly);
* :class:`SqrtExt` -- quadratic extensions ``a + b*sqrt(r)``, nestable, so a
  tower like Q(sqrt2, sqrt3) is available for exact rank decisions at
  covectors with surd components, and Hodge stars of metrics whose
  |det g| is not a rational square stay exact;
* :class:`CubeRootExt` -- the ring ``Q(d^(1/3))`` needed by the
  principal-type fixture built from cube roots of 2.

All types are immutable and implement enough arithmetic for the generic
tensor code paths (ring ops everywhere, field ops except CubeRootExt).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

FLOAT_REL_TOL = 1e-10   # module-wide float comparison policy

Rational = Union[int, Fraction]


def is_exact(x) -> bool:
    """True when x carries exact arithmetic (no rounding)."""
    if isinstance(x, (float, complex)):
        return False
    if type(x).__module__.startswith("numpy"):
        return False
    return True


def is_complex_scalar(x) -> bool:
    return isinstance(x, (complex, GaussianRational))


def as_float(x) -> float:
    if isinstance(x, (GaussianRational,)):
        raise TypeError("complex scalar has no float value")
    return float(x)


def as_complex(x) -> complex:
    if isinstance(x, GaussianRational):
        return complex(x)
    return complex(as_float(x)) if not isinstance(x, complex) else x


def close(a, b, rel: float = FLOAT_REL_TOL, abs_tol: float = 1e-12) -> bool:
    """Float/complex comparison with the module-wide relative tolerance."""
    return abs(complex(a) - complex(b)) <= max(abs_tol, rel * max(abs(complex(a)), abs(complex(b))))


def scalar_eq(a, b, rel: float = FLOAT_REL_TOL) -> bool:
    """Equality respecting the mode: exact for exact scalars, rel-tol otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    return close(a, b, rel=rel)


def scalar_sign(x) -> int:
    """Exact sign (-1, 0, +1) of a real scalar; exact for Fraction and SqrtExt."""
    if isinstance(x, SqrtExt):
        sa = scalar_sign(x.a)
        sb = scalar_sign(x.b)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # signs differ: compare a^2 against b^2 * rad
        return sa * scalar_sign(x.a * x.a - x.b * x.b * x.rad)
    if isinstance(x, GaussianRational):
        raise TypeError("complex scalar has no sign")
    if isinstance(x, CubeRootExt):
        v = float(x)
        if v == 0.0 and not x:
            return 0
        return (v > 0) - (v < 0)
    return (x > 0) - (x < 0)


def rational_sqrt(q: Rational) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def sqrt_scalar(q: Rational):
    """sqrt of a positive rational: a Fraction when exact, else a SqrtExt."""
    r = rational_sqrt(q)
    if r is not None:
        return r
    return SqrtExt(Fraction(0), Fraction(1), Fraction(q))


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _lift(x, rad):
    """Lift a plain rational (or compatible SqrtExt coefficient) to SqrtExt(rad)."""
    if isinstance(x, SqrtExt):
        if x.rad == rad:
            return x
        return SqrtExt(x, _zero_like(x), rad)
    return SqrtExt(Fraction(x), Fraction(0), rad)


def _zero_like(x):
    if isinstance(x, SqrtExt):
        return SqrtExt(_zero_like(x.a), _zero_like(x.a), x.rad)
    return Fraction(0)


def _squarefree_core(n: int) -> tuple[int, int]:
    """n = r*r*s with s squarefree (best effort): returns (r, s)."""
    r, s = 1, 1
    m = n
    d = 2
    while d * d <= m and d <= 1_000_000:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            r *= d ** (e // 2)
            if e % 2:
                s *= d
        d += 1 if d == 2 else 2
    s *= m
    return r, s


class SqrtExt:
    """Element a + b*sqrt(rad) with coefficients in Q or a nested SqrtExt ring.

    rad is canonicalised to a squarefree positive integer, so equal values
    built from different radicand spellings compare equal.  Nesting different
    radicands builds a tower, e.g. coefficients in Q(sqrt2) under an outer
    sqrt3 give Q(sqrt2, sqrt3).
    """

    __slots__ = ("a", "b", "rad")

    def __init__(self, a, b, rad):
        rad = Fraction(rad)
        if rad <= 0:
            raise ValueError("radicand must be positive")
        # sqrt(p/q) = sqrt(pq)/q; pull square factors out of the root
        r, s = _squarefree_core(rad.numerator * rad.denominator)
        mult = Fraction(r, rad.denominator)
        if mult != 1:
            b = b * mult
        rad = Fraction(s)
        object.__setattr__(self, "a", a if isinstance(a, SqrtExt) else Fraction(a))
        object.__setattr__(self, "b", b if isinstance(b, SqrtExt) else Fraction(b))
        object.__setattr__(self, "rad", rad)

    def __setattr__(self, *a):
        raise AttributeError("SqrtExt is immutable")

    def _coerce(self, other):
        if isinstance(other, SqrtExt):
            if other.rad == self.rad:
                return other
            # allow an element of the coefficient ring to appear bare
            return SqrtExt(other, _zero_like(other), self.rad)
        if isinstance(other, (int, Fraction)):
            return SqrtExt(Fraction(other), Fraction(0), self.rad)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return SqrtExt(self.a + o.a, self.b + o.b, self.rad)

    __radd__ = __add__

    def __neg__(self):
        return SqrtExt(-self.a, -self.b, self.rad)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return SqrtExt(self.a * o.a + self.b * o.b * self.rad,
                       self.a * o.b + self.b * o.a, self.rad)

    __rmul__ = __mul__

    def _inverse(self):
        # (a + b sqrt r)^-1 = (a - b sqrt r) / (a^2 - b^2 r)
        n = self.a * self.a - self.b * self.b * self.rad
        if isinstance(n, SqrtExt):
            ninv = n._inverse()
        else:
            if n == 0:
                raise ZeroDivisionError("zero SqrtExt")
            ninv = Fraction(1) / n
        return SqrtExt(self.a * ninv, -self.b * ninv, self.rad)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero SqrtExt")
        return self * o._inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return _lift(Fraction(1), self.rad) / self ** (-n)
        out = SqrtExt(Fraction(1), Fraction(0), self.rad)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, SqrtExt):
            if other.rad != self.rad:
                return (self - other).__bool__() is False
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.rad))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.rad))

    def __repr__(self):
        return f"SqrtExt({self.a!r}, {self.b!r}, rad={self.rad!r})"


def sqrt2_tower(a=0, b=0, c=0, d=0) -> SqrtExt:
    """Element a + b*sqrt2 + c*sqrt3 + d*sqrt6 of Q(sqrt2, sqrt3)."""
    inner1 = SqrtExt(Fraction(a), Fraction(b), 2)
    inner2 = SqrtExt(Fraction(c), Fraction(d), 2)
    return SqrtExt(inner1, inner2, 3)


class CubeRootExt:
    """Element a + b*d^(1/3) + c*d^(2/3) of the ring Q(d^(1/3)).

    Ring operations plus division by plain rationals; enough for exact
    tensor contractions over cube-root fixtures.
    """

    __slots__ = ("a", "b", "c", "rad")

    def __init__(self, a=0, b=0, c=0, rad=2):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))
        object.__setattr__(self, "rad", Fraction(rad))

    def __setattr__(self, *a):
        raise AttributeError("CubeRootExt is immutable")

    def _coerce(self, other):
        if isinstance(other, CubeRootExt):
            if other.rad != self.rad:
                raise ValueError("mixed cube-root radicands")
            return other
        if isinstance(other, (int, Fraction)):
            return CubeRootExt(other, 0, 0, self.rad)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CubeRootExt(self.a + o.a, self.b + o.b, self.c + o.c, self.rad)

    __radd__ = __add__

    def __neg__(self):
        return CubeRootExt(-self.a, -self.b, -self.c, self.rad)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.rad
        a1, b1, c1 = self.a, self.b, self.c
        a2, b2, c2 = o.a, o.b, o.c
        return CubeRootExt(
            a1 * a2 + d * (b1 * c2 + c1 * b2),
            a1 * b2 + b1 * a2 + d * c1 * c2,
            a1 * c2 + b1 * b2 + c1 * a2,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CubeRootExt(self.a / q, self.b / q, self.c / q, self.rad)
        return NotImplemented

    def __pow__(self, n: int):
        out = CubeRootExt(1, 0, 0, self.rad)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b) or bool(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.c == 0 and self.a == other
        if isinstance(other, CubeRootExt):
            return (self.rad == other.rad and self.a == other.a
                    and self.b == other.b and self.c == other.c)
        return NotImplemented

    def __hash__(self):
        if not self.b and not self.c:
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.rad))

    def __float__(self):
        r = float(self.rad) ** (1.0 / 3.0)
        return float(self.a) + float(self.b) * r + float(self.c) * r * r

    def __repr__(self):
        return f"CubeRootExt({self.a!r}, {self.b!r}, {self.c!r}, rad={self.rad!r})"
