import pytest

from borelinv.basis import (CompositionInvalid, basis_closed_form, basis_inductive, basis_size,
                            delta_degrees, enumerate_basis, evaluate_basis, gl_candidate_basis,
                            index_degree, latex_table, nabla, nabla_degrees,
                            parabolic_candidate_basis, parse_composition, smallest_monomial)
from borelinv.gf import field_new
from borelinv.series import flag_count, hilbert_of_degrees, qt_binomial


@pytest.mark.parametrize("q,m,n", [(2, m, n) for m in range(4) for n in range(1, 4)]
                         + [(3, m, n) for m in range(3) for n in range(1, 3)])
def test_inductive_equals_closed_form(q, m, n):
    ind = basis_inductive(q, m, n)
    assert ind == basis_closed_form(q, m, n)
    assert len(ind) == basis_size(q, m, n) == flag_count(q, m, n)


def test_known_sizes():
    assert basis_size(2, 1, 2) == 3
    assert basis_size(2, 3, 3) == 106
    assert basis_size(2, 0, 3) == 1


def test_enumeration_is_sorted_and_typed():
    idxs = enumerate_basis(2, 2, 2)
    assert idxs == sorted(idxs)
    assert {index_degree(i, 2) for i in idxs} <= set(range(0, 7))


def test_smallest_monomials_distinct_and_correct():
    F = field_new(2)
    pairs = evaluate_basis(F, 2, 3)
    preds = [smallest_monomial(i, 2, 2) for i, _ in pairs]
    assert len(set(preds)) == len(preds)
    for (idx, f), pred in zip(pairs, preds):
        assert f.smallest_monomial() == pred


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_nabla_and_delta_degrees(q, m):
    for s in range(min(m, 3) + 1):
        nd = sorted(nabla_degrees(q, m, s))
        assert nd == sorted(delta_degrees(q, m, s))
        assert hilbert_of_degrees(nd) == qt_binomial(m, s, q)
        assert len(nabla(q, m, s)) == len(nd)


def test_gl_candidates_count():
    # q = 2, m = 1, n = 2: 1 + [1 choose 1] = 2 elements
    assert len(gl_candidate_basis(2, 1, 2)) == 2


def test_parabolic_extremes_have_expected_sizes():
    assert len(parabolic_candidate_basis(2, 2, (1, 1))) == basis_size(2, 2, 2)
    assert len(parabolic_candidate_basis(2, 2, (2,))) == len(gl_candidate_basis(2, 2, 2))


def test_parse_composition():
    assert parse_composition("1,2") == (1, 2)
    with pytest.raises(CompositionInvalid):
        parse_composition("1,0")
    with pytest.raises(CompositionInvalid):
        parse_composition((1, 2), 4)
    with pytest.raises(CompositionInvalid):
        parse_composition("a")


def test_latex_table_shape():
    tex = latex_table(2, 1, 2)
    assert tex.startswith(r"\begin{tabular}") and tex.endswith(r"\end{tabular}")
