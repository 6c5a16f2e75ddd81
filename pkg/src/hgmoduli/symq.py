"""Truncated symmetric-function series with coefficients in Q[L][[q]].

Elements are finite sums  sum c(L) * p_lambda * q^d  in the power-sum basis,
truncated at ``|lambda| <= n_max`` (the arity) and ``d <= d_max``.  In this
basis plethysm and the derivation d/dp_1 act term by term:

* ``p_m o b`` is the m-th Adams operation on ``b``: parts of every partition,
  exponents of L and exponents of q are multiplied by m;
* ``a o b`` substitutes ``p_m o b`` for each ``p_m`` in ``a``, leaving the
  coefficients of ``a`` (and its q-powers) untouched.

Partitions are tuples of positive integers in weakly decreasing order.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import BoundMismatch, NotInF1
from .exactring import LPoly, ONE, ZERO, binomial_series_coeff, format_lpoly, parse_lpoly

EMPTY = ()


def partition_key(lam):
    """Total order: by size, then lexicographic on the decreasing parts.

    Within one size this lists 1^n first and (n) last, which refines the
    dominance order.
    """
    return (sum(lam), lam)


def merge(lam, mu):
    if not mu:
        return lam
    if not lam:
        return mu
    return tuple(sorted(lam + mu, reverse=True))


@lru_cache(maxsize=None)
def partitions(n, max_part=None):
    """All partitions of n as a tuple, largest parts first."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def z_lambda(lam):
    """Size of the centralizer of a permutation of cycle type lam."""
    out = 1
    for part in set(lam):
        m = lam.count(part)
        out *= part ** m * math.factorial(m)
    return out


class SymSeries:
    """Immutable truncated series; ``terms`` maps (partition, q-degree) -> LPoly."""

    __slots__ = ("n_max", "d_max", "terms")

    def __init__(self, n_max, d_max, terms=None):
        if n_max < 0 or d_max < 0:
            raise ValueError("truncation bounds must be nonnegative")
        self.n_max = n_max
        self.d_max = d_max
        clean = {}
        if terms:
            for (lam, d), c in terms.items():
                lam = tuple(lam)
                if sum(lam) <= n_max and 0 <= d <= d_max and c:
                    if not isinstance(c, LPoly):
                        c = LPoly([c])
                    clean[(lam, d)] = c
        self.terms = clean

    @classmethod
    def _from_clean(cls, n_max, d_max, terms):
        obj = cls.__new__(cls)
        obj.n_max, obj.d_max, obj.terms = n_max, d_max, terms
        return obj

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, n_max, d_max):
        return cls._from_clean(n_max, d_max, {})

    @classmethod
    def one(cls, n_max, d_max):
        return cls.monomial(EMPTY, 0, ONE, n_max, d_max)

    @classmethod
    def monomial(cls, lam, d, coeff, n_max, d_max):
        return cls(n_max, d_max, {(tuple(lam), d): coeff})

    @classmethod
    def s1(cls, n_max, d_max):
        return cls.monomial((1,), 0, ONE, n_max, d_max)

    def with_bounds(self, n_max, d_max):
        """Re-truncate (or embed) into different bounds."""
        return SymSeries(n_max, d_max, self.terms)

    # -- access ----------------------------------------------------------

    @property
    def bounds(self):
        return (self.n_max, self.d_max)

    def coefficient(self, lam, d):
        return self.terms.get((tuple(lam), d), ZERO)

    def constant_term(self):
        return self.coefficient(EMPTY, 0)

    def component(self, n, d):
        """The arity-n, q-degree-d piece as {partition: LPoly}."""
        return {lam: c for (lam, e), c in self.terms.items() if e == d and sum(lam) == n}

    def component_series(self, n, d):
        return SymSeries._from_clean(
            self.n_max, self.d_max,
            {(lam, e): c for (lam, e), c in self.terms.items() if e == d and sum(lam) == n},
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], partition_key(kv[0][0])))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SymSeries):
            return NotImplemented
        return self.bounds == other.bounds and self.terms == other.terms

    def __hash__(self):
        return hash((self.bounds, frozenset(self.terms.items())))

    def __repr__(self):
        return f"SymSeries(n_max={self.n_max}, d_max={self.d_max}, {format_series(self)!r})"

    # -- linear structure ------------------------------------------------

    def _check(self, other):
        if not isinstance(other, SymSeries):
            raise TypeError(f"expected SymSeries, got {type(other).__name__}")
        if self.bounds != other.bounds:
            raise BoundMismatch(f"bounds {self.bounds} != {other.bounds}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key)
            v = c if v is None else v + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return SymSeries._from_clean(self.n_max, self.d_max, out)

    def __neg__(self):
        return SymSeries._from_clean(self.n_max, self.d_max, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply every coefficient by a scalar in Q[L]."""
        if not isinstance(c, LPoly):
            c = LPoly([c])
        if not c:
            return SymSeries.zero(self.n_max, self.d_max)
        return SymSeries._from_clean(self.n_max, self.d_max, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymSeries):
            return series_mul(self, other)
        if isinstance(other, (LPoly, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (LPoly, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def map_coefficients(self, fn):
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if v:
                out[k] = v
        return SymSeries._from_clean(self.n_max, self.d_max, out)


def series_mul(a, b):
    """Truncated product: p_lambda * p_mu = p_(lambda u mu), q-degrees add."""
    a._check(b)
    n_max, d_max = a.bounds
    out = {}
    for (la, da), ca in a.terms.items():
        sa = sum(la)
        for (lb, db), cb in b.terms.items():
            d = da + db
            if d > d_max or sa + sum(lb) > n_max:
                continue
            key = (merge(la, lb), d)
            v = out.get(key)
            out[key] = ca * cb if v is None else v + ca * cb
    return SymSeries._from_clean(n_max, d_max, {k: v for k, v in out.items() if v})


def series_pow(a, e):
    out = SymSeries.one(*a.bounds)
    for _ in range(e):
        out = series_mul(out, a)
    return out


def adams_series(n, b):
    """p_n o b: scale parts, L-exponents and q-degrees by n."""
    if n < 1:
        raise ValueError("Adams index must be positive")
    if b.constant_term():
        raise NotInF1("plethysm argument has a nonzero constant term")
    if n == 1:
        return b
    out = {}
    for (lam, d), c in b.terms.items():
        if n * sum(lam) <= b.n_max and n * d <= b.d_max:
            out[(tuple(n * x for x in lam), n * d)] = c.adams(n)
    return SymSeries._from_clean(b.n_max, b.d_max, out)


def plethysm(a, b):
    """a o b, defined when b has zero constant term."""
    a._check(b)
    if b.constant_term():
        raise NotInF1("plethysm argument has a nonzero constant term")
    n_max, d_max = a.bounds
    adams = {}
    products = {EMPTY: SymSeries.one(n_max, d_max)}

    def power_product(lam):
        # prod_{m in lam} (p_m o b), built from the product for lam[:-1]
        got = products.get(lam)
        if got is None:
            m = lam[-1]
            if m not in adams:
                adams[m] = adams_series(m, b)
            got = series_mul(power_product(lam[:-1]), adams[m])
            products[lam] = got
        return got

    out = {}
    # sorting keeps the prefix products small and reusable
    for (lam, e), c in sorted(a.terms.items(), key=lambda kv: partition_key(kv[0][0])):
        prod = power_product(lam)
        for (mu, d), v in prod.terms.items():
            if d + e > d_max:
                continue
            key = (mu, d + e)
            w = v * c
            old = out.get(key)
            out[key] = w if old is None else old + w
    return SymSeries._from_clean(n_max, d_max, {k: v for k, v in out.items() if v})


def derive(a):
    """d/dp_1: removes one part equal to 1, multiplying by its multiplicity."""
    out = {}
    for (lam, d), c in a.terms.items():
        m1 = lam.count(1)
        if m1:
            key = (lam[:-1], d)  # ones sit at the end
            out[key] = c.scale(m1)
    return SymSeries._from_clean(a.n_max, a.d_max, out)


@lru_cache(maxsize=None)
def _h_in_p_dict(n):
    """h_n as {partition: Fraction} via n h_n = sum_{i=1}^n p_i h_{n-i}."""
    if n == 0:
        return {EMPTY: Fraction(1)}
    acc = {}
    for i in range(1, n + 1):
        for lam, c in _h_in_p_dict(n - i).items():
            key = merge(lam, (i,))
            acc[key] = acc.get(key, 0) + c
    return {lam: c / n for lam, c in acc.items() if c}


def h_in_p(n, n_max=None, d_max=0):
    """h_n (the class s_n) in the power-sum basis, at q-degree 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n_max is None:
        n_max = n
    return SymSeries(n_max, d_max, {(lam, 0): LPoly([c]) for lam, c in _h_in_p_dict(n).items()})


@lru_cache(maxsize=None)
def _p_in_h_dict(n):
    """p_n as {h-partition: Fraction} via p_n = n h_n - sum_{i<n} p_i h_{n-i}."""
    out = {(n,): Fraction(n)}
    for i in range(1, n):
        for mu, c in _p_in_h_dict(i).items():
            key = merge(mu, (n - i,))
            out[key] = out.get(key, 0) - c
    return {mu: c for mu, c in out.items() if c}


@lru_cache(maxsize=None)
def p_monomial_in_h(lam):
    """p_lambda expanded as {h-partition: Fraction}."""
    if not lam:
        return {EMPTY: Fraction(1)}
    head = p_monomial_in_h(lam[:-1])
    out = {}
    for mu, c in head.items():
        for nu, e in _p_in_h_dict(lam[-1]).items():
            key = merge(mu, nu)
            out[key] = out.get(key, 0) + c * e
    return {mu: c for mu, c in out.items() if c}


def to_h_basis(a):
    """Rewrite as {(h-partition, q-degree): LPoly} in the monomials h_mu."""
    out = {}
    for (lam, d), c in a.terms.items():
        for mu, e in p_monomial_in_h(lam).items():
            key = (mu, d)
            w = c.scale(e)
            old = out.get(key)
            out[key] = w if old is None else old + w
    return {k: v for k, v in out.items() if v}


def from_h_basis(hterms, n_max, d_max):
    """Inverse of :func:`to_h_basis`: expand h-monomials back into power sums."""
    out = SymSeries.zero(n_max, d_max)
    for (mu, d), c in hterms.items():
        term = SymSeries.monomial(EMPTY, d, c, n_max, d_max)
        for part in mu:
            term = series_mul(term, h_in_p(part, n_max, d_max))
        out = out + term
    return out


def rank_at(a, n, d):
    """Non-equivariant class: n! times the coefficient of p_1^n q^d."""
    if n > a.n_max or d > a.d_max:
        raise ValueError(f"({n}, {d}) lies outside the truncation bounds {a.bounds}")
    return a.coefficient((1,) * n, d).scale(math.factorial(n))


def binomial_power(n, f, n_max, d_max=0):
    """(1 + p_n)^f = sum_j C(f, j) p_n^j, truncated at arity n_max."""
    if n < 1:
        raise ValueError("n must be positive")
    terms = {}
    j = 0
    while n * j <= n_max:
        c = binomial_series_coeff(f, j)
        if c:
            terms[((n,) * j, 0)] = c
        j += 1
    return SymSeries._from_clean(n_max, d_max, terms)


# -- text form -------------------------------------------------------------

def _coeff_text(c, bare):
    text = format_lpoly(c, compact=True)
    if bare:
        return text
    simple = c.is_integral() and sum(1 for x in c.numerators if x) == 1
    if simple:
        return "" if text == "1" else ("-" if text == "-1" else text)
    return f"({text})" if c.is_integral() else text


def format_monomial(lam, letter="p"):
    parts = []
    for part in sorted(set(lam), reverse=True):
        m = lam.count(part)
        parts.append(f"{letter}{part}" + (f"^{m}" if m > 1 else ""))
    # lowest index first, e.g. p1^2 p2
    return " ".join(reversed(parts))


def format_terms(items, letter="p"):
    """Render [(partition, LPoly)] like ``(L^2+L)/2 p1^2 + (L^2-L)/2 p2``."""
    chunks = []
    for lam, c in sorted(items, key=lambda kv: partition_key(kv[0])):
        mono = format_monomial(lam, letter)
        coeff = _coeff_text(c, bare=not lam)
        if not mono:
            chunks.append(coeff)
        elif coeff in ("", "-"):
            chunks.append(coeff + mono)
        else:
            chunks.append(f"{coeff} {mono}")
    return " + ".join(chunks) if chunks else "0"


def format_series(a, letter="p"):
    by_degree = {}
    for (lam, d), c in a.sorted_terms():
        by_degree.setdefault(d, []).append((lam, c))
    if not by_degree:
        return "0"
    return " ; ".join(f"q^{d}: {format_terms(items, letter)}" for d, items in by_degree.items())


_MONO = re.compile(r"-?([ph])(\d+)(?:\^(\d+))?")


def parse_terms(text):
    """Inverse of :func:`format_terms`; returns (letter, {partition: LPoly})."""
    out = {}
    letter = None
    if text.strip() == "0":
        return letter, out
    for chunk in text.split(" + "):
        tokens = chunk.split(" ")
        coeff = ONE
        lam = []
        if not _MONO.fullmatch(tokens[0]):
            coeff = _parse_coeff(tokens[0])
            tokens = tokens[1:]
        elif tokens[0].startswith("-"):
            coeff = -ONE
            tokens = [tokens[0][1:]] + tokens[1:]
        for tok in tokens:
            m = _MONO.fullmatch(tok)
            if m is None:
                raise ValueError(f"cannot parse monomial {tok!r}")
            letter = m.group(1)
            lam += [int(m.group(2))] * int(m.group(3) or 1)
        key = tuple(sorted(lam, reverse=True))
        out[key] = out.get(key, ZERO) + coeff
    return letter, out


def _parse_coeff(tok):
    if tok.startswith("(") and tok.endswith(")"):
        tok = tok[1:-1]
    return parse_lpoly(tok)
