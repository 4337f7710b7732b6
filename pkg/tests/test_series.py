import pytest
from hypothesis import given, strategies as st

from borelinv.series import (SeriesNotDivisible, TSeries, betas_below, c_alpha_m,
                             c_alpha_m_abbreviated, c_nm_gl, display_n2, e_exponent, f_nm,
                             first_mismatch, flag_count, flag_count_by_beta, lines_series,
                             parse_series, qt_binomial, qt_multinomial,
                             summand_decomposition_check)

coeff_lists = st.lists(st.integers(-5, 5), max_size=8)


@given(coeff_lists, coeff_lists)
def test_ring_ops(a, b):
    A, B = TSeries(tuple(a)), TSeries(tuple(b))
    assert (A + B) - B == A
    assert (A * B).at(2) == A.at(2) * B.at(2)
    if B.coeffs and B.coeffs[-1] in (1, -1):
        assert (A * B).exact_div(B) == A


@given(coeff_lists)
def test_text_round_trip(a):
    A = TSeries(tuple(a))
    assert parse_series(A.to_text()) == A


def test_text_format():
    assert TSeries((1, 1, 2)).to_text() == "1 + t + 2*t^2"
    assert TSeries().to_text() == "0"


def test_not_divisible():
    with pytest.raises(SeriesNotDivisible):
        TSeries((1, 0, 1)).exact_div(TSeries((1, 1)))


def test_binomial_small_values():
    assert qt_binomial(2, 1, 2).to_text() == "1 + t + t^2"
    assert qt_binomial(3, 0, 2) == TSeries.one()
    assert qt_binomial(2, 3, 2) == TSeries()


def test_multinomial_matches_binomial():
    for q in (2, 3):
        for m in range(4):
            for s in range(m + 1):
                assert qt_multinomial(m, (s, m - s), q) == qt_binomial(m, s, q)
    with pytest.raises(ValueError):
        qt_multinomial(3, (1, 1), 2)


@pytest.mark.parametrize("q", [2, 3])
def test_recursion_equals_direct(q):
    for n in range(5):
        for m in range(5):
            assert f_nm(n, m, q, "recursive") == f_nm(n, m, q, "direct")


def test_known_borel_series():
    assert c_alpha_m(2, 1, (1, 1)).to_text() == "1 + t + t^2"
    assert c_alpha_m(2, 2, (1,)).to_text() == "1 + t + t^2 + t^3"


@pytest.mark.parametrize("q", [2, 3])
def test_display_n2(q):
    for m in range(1, 5):
        assert display_n2(q, m) == c_alpha_m(q, m, (1, 1))


def test_gl_series_is_parabolic_at_full_block():
    for q in (2, 3):
        for m in range(4):
            for n in range(1, 4):
                assert c_nm_gl(q, m, n) == c_alpha_m(q, m, (n,))


def test_abbreviated_reading_differs():
    full = c_alpha_m(2, 2, (1, 2))
    abbr = c_alpha_m_abbreviated(2, 2, (1, 2))
    assert full.is_nonnegative()
    assert abbr is None or abbr != full


def test_lines_series_and_e():
    assert lines_series(2, 2).to_text() == "1 + t + t^2"
    assert e_exponent(2, 1, (1, 1), (0, 0)) == 2
    assert list(betas_below((1, 1), 1)) == [(0, 0), (0, 1), (1, 0)]


def test_flag_counts():
    assert flag_count(2, 1, 2) == 3
    assert sum(flag_count_by_beta(2, 3, 3).values()) == flag_count(2, 3, 3) == 106


def test_series_value_at_one_counts_basis():
    assert c_alpha_m(2, 3, (1, 1, 1)).at(1) == 106


@pytest.mark.parametrize("q,m,n", [(2, 2, 2), (2, 3, 3), (3, 2, 2)])
def test_summand_decomposition(q, m, n):
    assert summand_decomposition_check(q, m, n)


def test_first_mismatch():
    assert first_mismatch(TSeries((1, 2)), TSeries((1, 2))) is None
    assert first_mismatch(TSeries((1, 2)), TSeries((1, 3, 1))) == 1
