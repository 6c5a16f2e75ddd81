"""Classes of Quot-scheme compactifications of Mor_d(P^1, G(r, k)).

The closed Quot scheme Q̄_d has a torus cell decomposition whose cell counts
are given by Strømme's index set; the locally free locus Q_d = Mor_d is then
recovered by inverting  sum_d [Q̄_d] q^d = (sum_d [Q_d] q^d)(sum_j Ω_j q^j),
where Ω_j (depending only on s = k - r) is the class of a punctual Quot
scheme.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .errors import BadRange, InternalInconsistency
from .exactring import L, LPoly, ZERO, grassmannian_class, projective_class


def _check_rk(r, k):
    if not (isinstance(r, int) and isinstance(k, int)) or not 1 <= r <= k - 1:
        raise BadRange(f"need 1 <= r <= k-1, got r={r}, k={k}")


@dataclass(frozen=True)
class CellCounts:
    delta: int
    counts: tuple

    @property
    def total(self):
        return sum(self.counts)

    def as_poly(self):
        return LPoly._raw(self.counts)


@lru_cache(maxsize=None)
def strom_cell_counts(r, k, delta):
    """Number of i-dimensional cells of Q̄_delta for i = 0..k*delta + r(k-r)."""
    _check_rk(r, k)
    if delta < 0:
        raise BadRange(f"delta must be >= 0, got {delta}")
    return CellCounts(delta, tuple(kernels.strom_counts(r, k, delta)))


def strom_cell_counts_brute(r, k, delta):
    """Direct enumeration of the index set; exponential, test oracle only."""
    _check_rk(r, k)
    s = k - r
    counts = [0] * (k * delta + r * s + 1)
    for chain in itertools.combinations_with_replacement(range(delta + 1), 2 * s - 1):
        # chain = a_1 <= b_1 <= a_2 <= ... <= b_{s-1} <= a_s
        a = chain[0::2]
        b = (0,) + chain[1::2] + (delta,)
        for c in itertools.combinations_with_replacement(range(r + 1), s):
            i = sum(a[j] + c[j] * (1 + b[j + 1] - b[j]) for j in range(s))
            counts[i] += 1
    return CellCounts(delta, tuple(counts))


def qbar_class(r, k, delta):
    """[Q̄_delta] = sum_i m_{delta,i} L^i."""
    p = strom_cell_counts(r, k, delta).as_poly()
    if p.degree != k * delta + r * (k - r):
        raise InternalInconsistency(f"[Q̄_{delta}] for G({r},{k}) has degree {p.degree}")
    return p


@lru_cache(maxsize=None)
def omega(s, j):
    """Ω_j: sum over m in Z_{>=0}^s, |m| = j, of prod [P^{m_i}] * L^{sum (i-1) m_i}."""
    if s < 1 or j < 0:
        raise BadRange(f"omega needs s >= 1 and j >= 0, got s={s}, j={j}")
    # build up one coordinate at a time: acc[t] covers compositions of t
    acc = [projective_class(t) for t in range(j + 1)]
    for i in range(2, s + 1):
        nxt = []
        for t in range(j + 1):
            tot = ZERO
            for m in range(t + 1):
                tot = tot + acc[t - m] * projective_class(m) * L ** ((i - 1) * m)
            nxt.append(tot)
        acc = nxt
    return acc[j]


@lru_cache(maxsize=None)
def mho(s, j):
    """Coefficients of (sum_j Ω_j q^j)^(-1)."""
    if j < 0:
        raise BadRange(f"j must be >= 0, got {j}")
    if j == 0:
        return LPoly._raw((1,))
    tot = ZERO
    for i in range(j):
        tot = tot + mho(s, i) * omega(s, j - i)
    return -tot


def mor_class(r, k, d):
    """[Mor_d(P^1, G(r, k))] = sum_{j=0}^d mho_j [Q̄_{d-j}]."""
    _check_rk(r, k)
    if d < 0:
        raise BadRange(f"d must be >= 0, got {d}")
    return _mor_class(r, k, d)


@lru_cache(maxsize=None)
def _mor_class(r, k, d):
    s = k - r
    tot = ZERO
    for j in range(d + 1):
        tot = tot + mho(s, j) * qbar_class(r, k, d - j)
    if tot.degree != k * d + r * s:
        raise InternalInconsistency(
            f"[Q_{d}] for G({r},{k}) has degree {tot.degree}, expected {k * d + r * s}"
        )
    if d == 0 and tot != grassmannian_class(r, k):
        raise InternalInconsistency(f"[Q_0] differs from [G({r},{k})]")
    return tot
