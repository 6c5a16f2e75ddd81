from fractions import Fraction

import pytest

from hgmoduli.acceptance import G24, MBAR_0_0_2, MBAR_1_0_2, P, prod
from hgmoduli.cache import Kind, MemoStore, ModuliKey
from hgmoduli.errors import BadRange, NoConvergence
from hgmoduli.exactring import L, ONE, grassmannian_class, projective_class
from hgmoduli.modulirec import (
    EMPTY_CELLS,
    config_class,
    expected_dimension,
    hodge_report,
    mbar_class,
    mbar_series,
    necklace,
    open_stratum,
    phi_bar,
    phi_open,
    solve_phi_bar,
)
from hgmoduli.symq import SymSeries, plethysm, rank_at, to_h_basis

HALF = Fraction(1, 2)


def h_cell(series, n, d):
    return {mu: c for (mu, e), c in to_h_basis(series.component_series(n, d)).items()}


def test_necklace_counts():
    # necklace(m) at L = q counts aperiodic words of length m in q letters / m
    assert necklace(1) == L
    assert necklace(2) == (L ** 2 - L).scale(HALF)
    assert [int(necklace(m)(2)) for m in range(1, 7)] == [2, 1, 2, 3, 6, 9]


def test_config_examples():
    c = config_class(3)
    assert c.component(0, 0) == {(): ONE}
    assert c.component(1, 0) == {(1,): L + 1}
    assert c.component(2, 0) == {(1, 1): (L ** 2 + L).scale(HALF), (2,): (L ** 2 - L).scale(HALF)}
    assert h_cell(c, 2, 0) == {(1, 1): L, (2,): L ** 2 - L}
    # F(P^1, 3) = PGL(2), acted on freely by S_3 permuting the points
    assert h_cell(c, 3, 0) == {(3,): L ** 3 - L}


@pytest.mark.parametrize("n", range(0, 7))
def test_config_rank(n):
    want = ONE
    for i in range(n):
        want = want * (L + 1 - i)
    assert rank_at(config_class(6), n, 0) == want


def test_config_h_basis_integral():
    c = config_class(6)
    for n in range(7):
        for coeff in h_cell(c, n, 0).values():
            assert coeff.is_integral()


def test_open_strata_examples():
    m = open_stratum(2, 4, 3, 2)
    assert h_cell(m, 0, 1) == {(): prod(P(1, 1), G24)}
    assert h_cell(m, 3, 0) == {(3,): G24}
    assert h_cell(m, 1, 2) == {(1,): prod(L ** 2, P(1, 1), G24, P(1, 1, 1, -1))}
    for cell in EMPTY_CELLS:
        assert m.component(*cell) == {}


def test_phi_open_examples():
    phi = phi_open(2, 4, 3, 2)
    # D of the (1, 1) open stratum divided by [G]
    assert phi.component(0, 1) == {(): P(1, 1) * P(1, 1)}
    assert phi.component(3, 0) == {}


def test_phi_bar_examples():
    x = phi_bar(2, 4, 4, 2)
    assert x.component(0, 0) == {}
    assert x.component(0, 1) == {(): P(1, 2, 1)}
    assert x.component(1, 1) == {(1,): P(1, 3, 3, 1)}


def test_phi_bar_is_a_fixed_point():
    phi = phi_open(2, 4, 4, 2)
    x = phi_bar(2, 4, 4, 2)
    s1 = SymSeries.s1(4, 2)
    assert plethysm(phi, s1 + x) == x


def test_fixed_point_budget():
    phi = phi_open(2, 4, 4, 2)
    with pytest.raises(NoConvergence):
        solve_phi_bar(phi, max_passes=1)


def test_golden_classes():
    assert mbar_class(2, 4, 0, 2).component(0, 2) == {(): MBAR_0_0_2}
    assert mbar_class(2, 4, 1, 2).component(1, 2) == {(1,): MBAR_1_0_2}
    assert rank_at(mbar_class(1, 2, 0, 2), 0, 2) == P(1, 1, 1)


@pytest.mark.parametrize("k", range(3, 7))
def test_lines_in_projective_space(k):
    # lines in P^{k-1} form G(2,k); a marked line is a point of P^{k-1} plus a direction
    assert rank_at(mbar_class(1, k, 0, 1), 0, 1) == grassmannian_class(2, k)
    assert rank_at(mbar_class(1, k, 1, 1), 1, 1) == projective_class(k - 1) * projective_class(k - 2)


def test_complete_conics():
    rep = hodge_report(1, 3, 0, 2)
    assert rep.betti == [1, 0, 2, 0, 3, 0, 3, 0, 2, 0, 1]
    assert rep.euler == 12


def test_hodge_report_g24():
    rep = hodge_report(2, 4, 0, 2)
    assert rep.dimension == 9
    assert rep.euler == 72
    assert rep.betti[::2] == [1, 3, 7, 11, 14, 14, 11, 7, 3, 1]
    assert not any(rep.betti[1::2])
    assert rep.e_poly == [(i, c) for i, c in enumerate([1, 3, 7, 11, 14, 14, 11, 7, 3, 1])]
    assert rep.hodge_numbers()[(4, 4)] == 14


def test_point_target_curves():
    # d = 0: M̄_0,n(G, 0) = M̄_0,n x G
    g = grassmannian_class(2, 4)
    assert rank_at(mbar_class(2, 4, 3, 0), 3, 0) == g
    assert rank_at(mbar_class(2, 4, 4, 0), 4, 0) == g * P(1, 1)
    assert rank_at(mbar_class(2, 4, 5, 0), 5, 0) == g * P(1, 5, 1)


@pytest.mark.parametrize("cell", sorted(EMPTY_CELLS))
def test_empty_cells(cell):
    rep = hodge_report(2, 4, *cell)
    assert rep.empty
    assert rep.betti == [] and rep.euler == 0
    assert rep.p_basis == {}


def test_h_basis_is_integral():
    for n in range(3):
        for d in range(3):
            rep = hodge_report(2, 4, n, d)
            assert all(c.is_integral() for c in rep.h_basis.values())


def test_exact_cells_do_not_depend_on_truncation():
    small = mbar_series(2, 4, 3, 1)
    big = mbar_series(2, 4, 5, 2)
    for d in range(2):
        for n in range(3 - d):
            assert small.component(n, d) == big.component(n, d)


def test_expected_dimension():
    assert expected_dimension(2, 4, 0, 2) == 9
    assert expected_dimension(1, 3, 0, 2) == 5


def test_store_records_pipeline():
    store = MemoStore()
    mbar_class(2, 4, 0, 1, store)
    keys = {key.kind for key in store.keys()}
    assert {Kind.M_BAR, Kind.PHI_BAR, Kind.M_OPEN, Kind.QBAR, Kind.Q, Kind.OMEGA, Kind.MHO} <= keys
    assert store.get(ModuliKey(2, 4, Kind.Q, 0, 1)) == prod(L, P(1, -1), P(1, 1), P(1, 1), P(1, 0, 1), P(1, 1, 1))
    # a second call is served from the store
    assert mbar_class(2, 4, 0, 1, store) == mbar_class(2, 4, 0, 1, MemoStore())


def test_bad_ranges():
    with pytest.raises(BadRange):
        mbar_class(0, 4, 0, 1)
    with pytest.raises(BadRange):
        mbar_class(2, 4, -1, 1)
