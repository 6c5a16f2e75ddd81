import pytest
from hypothesis import strategies as st

from hgmoduli.exactring import LPoly


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("HG_MODULI_CACHE", str(tmp_path / "cache.json"))


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def lpolys(draw, max_degree=4, integral=False):
    elems = st.integers(-6, 6) if integral else rationals
    return LPoly(draw(st.lists(elems, max_size=max_degree + 1)))


def P(*coeffs):
    """Polynomial from coefficients listed top degree first."""
    return LPoly(list(reversed(coeffs)))
