"""Polynomials in the Lefschetz class L with exact rational coefficients.

An :class:`LPoly` is stored as a tuple of integer numerators (low degree
first, no trailing zeros) over one positive common denominator, reduced so
that the denominator is coprime to the content of the numerators.  The
rational coefficients are exposed through :attr:`LPoly.coeffs`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .errors import BadRange, DivisionInexact


def _trim(nums):
    n = len(nums)
    while n and not nums[n - 1]:
        n -= 1
    return tuple(nums[:n])


class LPoly:
    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs=(), den=1):
        """Build from rational-like coefficients ``coeffs[i]`` of ``L^i``.

        With integer coefficients the optional ``den`` divides all of them.
        """
        coeffs = list(coeffs)
        if any(not isinstance(c, int) for c in coeffs):
            fr = [Fraction(c) / den for c in coeffs]
            den = 1
            for c in fr:
                den = den * c.denominator // math.gcd(den, c.denominator)
            coeffs = [c.numerator * (den // c.denominator) for c in fr]
        self._set(coeffs, den)

    def _set(self, nums, den):
        nums = _trim(nums)
        if den <= 0:
            raise ValueError("denominator must be positive")
        if not nums:
            den = 1
        elif den != 1:
            g = den
            for x in nums:
                g = math.gcd(g, x)
                if g == 1:
                    break
            if g != 1:
                nums = tuple(x // g for x in nums)
                den //= g
        self._num = nums
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, nums, den=1):
        obj = cls.__new__(cls)
        obj._set(nums, den)
        return obj

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, degree, c=1):
        return cls([0] * degree + [c])

    # -- accessors -------------------------------------------------------

    @property
    def numerators(self):
        return self._num

    @property
    def denominator(self):
        return self._den

    @property
    def coeffs(self):
        return [Fraction(x, self._den) for x in self._num]

    def coeff(self, i):
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    @property
    def degree(self):
        """Degree in L; -1 for the zero polynomial."""
        return len(self._num) - 1

    def is_zero(self):
        return not self._num

    def __bool__(self):
        return bool(self._num)

    def is_integral(self):
        return self._den == 1

    def int_coeffs(self):
        if self._den != 1:
            raise ValueError(f"{self} does not have integer coefficients")
        return list(self._num)

    def __call__(self, x):
        acc = 0
        for c in reversed(self._num):
            acc = acc * x + c
        return Fraction(acc, self._den) if self._den != 1 else acc

    # -- ring operations -------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._num, other._num
        da, db = self._den, other._den
        if da == db:
            den, fa, fb = da, 1, 1
        else:
            g = math.gcd(da, db)
            den = da // g * db
            fa, fb = den // da, den // db
        n = max(len(a), len(b))
        out = [0] * n
        for i, x in enumerate(a):
            out[i] = x * fa
        for i, x in enumerate(b):
            out[i] += x * fb
        return LPoly._raw(out, den)

    __radd__ = __add__

    def __neg__(self):
        return LPoly._raw([-x for x in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._num or not other._num:
            return ZERO
        return LPoly._raw(kernels.convolve(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c):
        """Multiply by a rational scalar."""
        c = Fraction(c)
        return LPoly._raw([x * c.numerator for x in self._num], self._den * c.denominator)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Fraction(other))
        if isinstance(other, LPoly):
            return poly_exact_div(self, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, LPoly):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self == LPoly([other])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def adams(self, n):
        return poly_adams(self, n)

    def __repr__(self):
        return f"LPoly({format_lpoly(self)!r})"

    def __str__(self):
        return format_lpoly(self)


ZERO = LPoly._raw(())
ONE = LPoly._raw((1,))
L = LPoly._raw((0, 1))


def poly_exact_div(a, b):
    """Exact quotient ``a / b``; raises DivisionInexact when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return ZERO
    A, B = a._num, b._num
    q = kernels.exact_div(A, B)
    den = a._den
    if q is None:
        # pseudo-division: A * lead^m is divisible over Z whenever B | A over Q
        m = len(A) - len(B) + 1
        if m <= 0:
            raise DivisionInexact(f"({a}) is not divisible by ({b})")
        scale = abs(B[-1]) ** m
        q = kernels.exact_div([x * scale for x in A], B)
        if q is None:
            raise DivisionInexact(f"({a}) is not divisible by ({b})")
        den *= scale
    # (A/da) / (B/db) = (A/B) * db / da
    return LPoly._raw([x * b._den for x in q], den)


def poly_adams(a, n):
    """Substitute L -> L^n."""
    if n < 1:
        raise ValueError("Adams index must be positive")
    if n == 1 or a.degree <= 0:
        return a
    out = [0] * (n * a.degree + 1)
    for i, x in enumerate(a._num):
        out[n * i] = x
    return LPoly._raw(out, a._den)


def binomial_series_coeff(f, j):
    """Generalized binomial coefficient f(f-1)...(f-j+1)/j! with f in Q[L]."""
    out = ONE
    for i in range(j):
        out = out * (f - i)
    return out.scale(Fraction(1, math.factorial(j)))


def projective_class(m):
    """[P^m] = 1 + L + ... + L^m."""
    if m < 0:
        raise BadRange(f"projective dimension must be >= 0, got {m}")
    return LPoly._raw((1,) * (m + 1))


@lru_cache(maxsize=None)
def grassmannian_class(r, k):
    """[G(r, k)] by [G(r,k)] = [G(r,k-1)] + L^(k-r) [G(r-1,k-1)]."""
    if k < 0 or r < 0 or r > k:
        raise BadRange(f"Grassmannian G({r},{k}) needs 0 <= r <= k")
    if r == 0 or r == k:
        return ONE
    if r == 1 or r == k - 1:
        return projective_class(k - 1)
    return grassmannian_class(r, k - 1) + L ** (k - r) * grassmannian_class(r - 1, k - 1)


AUT_P1 = L ** 3 - L


# -- text form -------------------------------------------------------------

def _monomial_text(c, i, var="L"):
    """Text for c * var^i with integer c (sign included)."""
    if i == 0:
        return str(c)
    mono = var if i == 1 else f"{var}^{i}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}{mono}"


def format_lpoly(p, compact=False, var="L"):
    """Render with descending powers, e.g. ``L^3 - L`` or ``(L^2+L)/2``.

    ``compact`` drops the spaces around the signs.  A denominator is written
    as ``(numerator)/den``.
    """
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p._num) - 1, -1, -1):
        c = p._num[i]
        if c:
            parts.append(_monomial_text(c, i, var))
    text = parts[0]
    for t in parts[1:]:
        if t.startswith("-"):
            text += ("-" if compact else " - ") + t[1:]
        else:
            text += ("+" if compact else " + ") + t
    if p._den != 1:
        text = text if len(parts) == 1 else f"({text.replace(' ', '')})"
        text = f"{text}/{p._den}"
    return text


_TERM = re.compile(r"([+-]?)(\d*)(?:(L)(?:\^(\d+))?)?$")


def parse_lpoly(text):
    """Inverse of :func:`format_lpoly` (either spacing)."""
    text = text.replace(" ", "")
    den = 1
    m = re.fullmatch(r"\((.*)\)/(\d+)", text) or re.fullmatch(r"([^()]*)/(\d+)", text)
    if m:
        text, den = m.group(1), int(m.group(2))
    if text == "0":
        return ZERO
    coeffs = {}
    for tok in re.findall(r"[+-]?[^+-]+", text):
        t = _TERM.fullmatch(tok)
        if t is None or (not t.group(2) and not t.group(3)):
            raise ValueError(f"cannot parse polynomial term {tok!r}")
        sign = -1 if t.group(1) == "-" else 1
        c = int(t.group(2)) if t.group(2) else 1
        e = (int(t.group(4)) if t.group(4) else 1) if t.group(3) else 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
    top = max(coeffs)
    return LPoly._raw([coeffs.get(i, 0) for i in range(top + 1)], den)
