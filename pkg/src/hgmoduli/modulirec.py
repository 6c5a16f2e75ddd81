"""Equivariant HG-characteristics of the genus-0 stable map spaces M̄_{0,n}(G(r,k), d).

All series live in the truncated power-sum model of :mod:`hgmoduli.symq`,
graded by the number n of marked points (the arity) and the degree d
(the exponent of q).  The pipeline:

1. ``config_class``: e(F(P^1)) = (1 + p_1) prod_m (1 + p_m)^{necklace_m(L)};
2. ``open_stratum``: e(M_{0,n}(G,d)) = [Mor_d] e(F(P^1, n)) / (L^3 - L);
3. ``phi_open``: e(Φ) = D e(M) / [G];
4. ``phi_bar``: the fixed point e(Φ̄) = e(Φ) o (s_1 + e(Φ̄));
5. ``mbar_series``: e(M̄) = e(M) o (s_1 + e(Φ̄)) + [G](s_2 o e(Φ̄) - e(Φ̄)^2).

With bounds (n_max, d_max) every cell (n, d) with n + d < n_max and
d <= d_max of the last three series is exact; cells beyond that are
truncation artefacts and are never returned or cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .cache import Kind, MemoStore, ModuliKey
from .errors import (
    BadRange,
    DivisionInexact,
    IntegralityFailure,
    InternalInconsistency,
    NoConvergence,
)
from .exactring import AUT_P1, LPoly, grassmannian_class, poly_exact_div
from .quotclasses import mho, mor_class, omega, qbar_class
from .symq import (
    SymSeries,
    binomial_power,
    derive,
    h_in_p,
    plethysm,
    rank_at,
    series_mul,
    to_h_basis,
)

EMPTY_CELLS = frozenset({(0, 0), (1, 0), (2, 0)})

default_store = MemoStore()


def _check_rk(r, k):
    if not (isinstance(r, int) and isinstance(k, int)) or not 1 <= r <= k - 1:
        raise BadRange(f"need 1 <= r <= k-1, got r={r}, k={k}")


def _check_nd(n, d):
    if not (isinstance(n, int) and isinstance(d, int)) or n < 0 or d < 0:
        raise BadRange(f"need n >= 0 and d >= 0, got n={n}, d={d}")


def mobius(n):
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def necklace(n):
    """(1/n) sum_{k | n} mu(n/k) L^k."""
    coeffs = [0] * (n + 1)
    for k in range(1, n + 1):
        if n % k == 0:
            coeffs[k] = mobius(n // k)
    return LPoly(coeffs, n)


@lru_cache(maxsize=None)
def config_class(n_max, d_max=0):
    """e(F(P^1)) truncated at arity n_max (all of it sits at q^0)."""
    out = SymSeries(n_max, d_max, {((), 0): 1, ((1,), 0): 1})
    for m in range(1, n_max + 1):
        out = series_mul(out, binomial_power(m, necklace(m), n_max, d_max))
    return out


def _divide_aut(mor, coeff):
    try:
        return poly_exact_div(mor, AUT_P1) * coeff
    except DivisionInexact:
        return poly_exact_div(mor * coeff, AUT_P1)


@lru_cache(maxsize=None)
def open_stratum(r, k, n_max, d_max):
    """e(M_{0,n}(G(r,k), d)) for all n <= n_max, d <= d_max."""
    _check_rk(r, k)
    config = config_class(n_max, d_max)
    terms = {}
    for d in range(d_max + 1):
        mor = mor_class(r, k, d)
        for (lam, _), c in config.terms.items():
            if (sum(lam), d) in EMPTY_CELLS:
                continue
            terms[(lam, d)] = _divide_aut(mor, c)
    return SymSeries._from_clean(n_max, d_max, {key: v for key, v in terms.items() if v})


@lru_cache(maxsize=None)
def phi_open(r, k, n_max, d_max):
    """e(Φ) = D e(M) / [G]; arity n_max is zero since D lowers arity."""
    grass = grassmannian_class(r, k)
    return derive(open_stratum(r, k, n_max, d_max)).map_coefficients(
        lambda c: poly_exact_div(c, grass)
    )


def solve_phi_bar(phi, max_passes=None):
    """Fixed point x = phi o (s_1 + x), iterating from x = 0."""
    n_max, d_max = phi.bounds
    if max_passes is None:
        max_passes = (n_max + 1) * (d_max + 1) + 1
    s1 = SymSeries.s1(n_max, d_max)
    x = SymSeries.zero(n_max, d_max)
    for _ in range(max_passes):
        nxt = plethysm(phi, s1 + x)
        if nxt == x:
            return x
        x = nxt
    raise NoConvergence(f"no fixed point after {max_passes} passes")


@lru_cache(maxsize=None)
def phi_bar(r, k, n_max, d_max):
    return solve_phi_bar(phi_open(r, k, n_max, d_max))


def mbar_from_parts(m_open, fiber, grass):
    """e(M) o (s_1 + x) + [G](s_2 o x - x^2)."""
    n_max, d_max = m_open.bounds
    s1 = SymSeries.s1(n_max, d_max)
    head = plethysm(m_open, s1 + fiber)
    tail = plethysm(h_in_p(2, n_max, d_max), fiber) - series_mul(fiber, fiber)
    return head + tail.scale(grass)


@lru_cache(maxsize=None)
def mbar_series(r, k, n_max, d_max):
    _check_rk(r, k)
    return mbar_from_parts(
        open_stratum(r, k, n_max, d_max),
        phi_bar(r, k, n_max, d_max),
        grassmannian_class(r, k),
    )


def query_bounds(n, d):
    """Minimal truncation for the (n, d) cell: one extra arity feeds D."""
    return n + d + 1, d


def _exact_cells(series):
    n_max, d_max = series.bounds
    for d in range(d_max + 1):
        for n in range(n_max - d):
            yield n, d


def _record_series(store, r, k, kind, series, exact_only=True):
    cells = _exact_cells(series) if exact_only else (
        (n, d) for d in range(series.d_max + 1) for n in range(series.n_max + 1)
    )
    for n, d in cells:
        store.put(ModuliKey(r, k, kind, n, d), series.component(n, d))


def _record_quot(store, r, k, d_max):
    s = k - r
    for d in range(d_max + 1):
        store.put(ModuliKey(r, k, Kind.QBAR, 0, d), qbar_class(r, k, d))
        store.put(ModuliKey(r, k, Kind.Q, 0, d), mor_class(r, k, d))
        store.put(ModuliKey(r, k, Kind.OMEGA, 0, d), omega(s, d))
        store.put(ModuliKey(r, k, Kind.MHO, 0, d), mho(s, d))


def _as_component_series(comp, n, d):
    return SymSeries._from_clean(n, d, {(lam, d): c for lam, c in comp.items()})


def mbar_class(r, k, n, d, store=None):
    """The (n, d) component of e(M̄), as a series with bounds (n, d)."""
    _check_rk(r, k)
    _check_nd(n, d)
    store = default_store if store is None else store
    key = ModuliKey(r, k, Kind.M_BAR, n, d)
    got = store.get(key)
    if got is None:
        if (n, d) in EMPTY_CELLS:
            got = {}
        else:
            n_max, d_max = query_bounds(n, d)
            series = mbar_series(r, k, n_max, d_max)
            _record_quot(store, r, k, d_max)
            _record_series(store, r, k, Kind.M_OPEN, open_stratum(r, k, n_max, d_max), exact_only=False)
            _record_series(store, r, k, Kind.PHI_BAR, phi_bar(r, k, n_max, d_max))
            _record_series(store, r, k, Kind.M_BAR, series)
            got = series.component(n, d)
        store.put(key, got)
    return _as_component_series(got, n, d)


def expected_dimension(r, k, n, d):
    return k * d + r * (k - r) + n - 3


@dataclass
class HodgeReport:
    r: int
    k: int
    n: int
    d: int
    p_basis: dict
    h_basis: dict
    rank: LPoly
    dimension: int | None
    betti: list = field(default_factory=list)
    e_poly: list = field(default_factory=list)
    poincare: list = field(default_factory=list)
    euler: int = 0

    @property
    def empty(self):
        return self.dimension is None

    def hodge_numbers(self):
        """h^{p,q} as a dict; only p == q can be nonzero."""
        return {(p, p): self.betti[2 * p] for p in range(len(self.betti) // 2 + 1) if self.betti}


def hodge_report(r, k, n, d, store=None):
    comp = mbar_class(r, k, n, d, store)
    rank = rank_at(comp, n, d)
    p_basis = comp.component(n, d)
    h_basis = {mu: c for (mu, _), c in to_h_basis(comp).items()}
    if (n, d) in EMPTY_CELLS or not rank:
        if rank:
            raise InternalInconsistency(f"M̄_0,{n}(G({r},{k}),{d}) should be empty")
        return HodgeReport(r, k, n, d, p_basis, h_basis, rank, None)
    if not rank.is_integral() or any(c < 0 for c in rank.numerators):
        raise IntegralityFailure(f"rank class {rank} is not in Z>=0[L]")
    dim = expected_dimension(r, k, n, d)
    if rank.degree != dim:
        raise InternalInconsistency(f"rank class has degree {rank.degree}, expected {dim}")
    coeffs = list(rank.numerators)
    betti = [0] * (2 * dim + 1)
    for i, c in enumerate(coeffs):
        betti[2 * i] = c
    e_poly = [(i, c) for i, c in enumerate(coeffs) if c]
    return HodgeReport(
        r, k, n, d, p_basis, h_basis, rank, dim,
        betti=betti, e_poly=e_poly, poincare=list(betti), euler=int(rank(1)),
    )


def clear_caches():
    """Drop every in-process memo (used for cold-start timings)."""
    from . import exactring, quotclasses

    for fn in (config_class, open_stratum, phi_open, phi_bar, mbar_series):
        fn.cache_clear()
    for fn in (quotclasses.strom_cell_counts, quotclasses.omega, quotclasses.mho,
               quotclasses._mor_class, exactring.grassmannian_class):
        fn.cache_clear()
    default_store.clear()
