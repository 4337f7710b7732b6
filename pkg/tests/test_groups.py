import pytest

from borelinv.gf import field_new
from borelinv.groups import (GroupSpec, MatrixFq, NotInvertible, SizeBound, all_compositions,
                             check_size, closure_order, expected_order, generators,
                             in_span_of, invariant_dims, is_invariant, orbit_count,
                             rank_of_family)
from borelinv.mpoly import poly_from_text
from borelinv.report import OracleCache
from borelinv.series import flag_count

ORDERS = [("borel", 2, 2, (), 2), ("borel", 2, 3, (), 8), ("borel", 3, 2, (), 12),
          ("gl", 2, 3, (), 168), ("parabolic", 2, 3, (1, 2), 24), ("gl", 3, 2, (), 48),
          ("borel", (2, 2), 2, (), 36), ("gl", (2, 2), 2, (), 180)]


@pytest.mark.parametrize("kind,q,n,alpha,order", ORDERS)
def test_generators_close_to_expected_order(kind, q, n, alpha, order):
    F = field_new(*q) if isinstance(q, tuple) else field_new(q)
    spec = GroupSpec(kind, n, F, alpha)
    assert closure_order(spec) == expected_order(spec) == order
    assert all(g.is_invertible() for g in generators(spec))


def test_singular_matrix_rejected(F2):
    with pytest.raises(NotInvertible):
        MatrixFq.make(F2, [[1, 1], [1, 1]])


def test_dickson_is_gl_invariant(F2):
    f = poly_from_text(F2, 2, "x1^2 + x1*x2 + x2^2")
    assert is_invariant(f, GroupSpec("gl", 2, F2), 2)
    assert not is_invariant(poly_from_text(F2, 2, "x2"), GroupSpec("borel", 2, F2), 1)
    assert is_invariant(poly_from_text(F2, 2, "x1"), GroupSpec("borel", 2, F2), 1)


def test_oracle_dims_small(F2):
    dims = invariant_dims(GroupSpec("borel", 2, F2), 1)
    assert {d: v.dim for d, v in dims.items() if v.dim} == {0: 1, 1: 1, 2: 1}


def test_oracle_cache_does_not_change_result(F3, tmp_path):
    spec = GroupSpec("borel", 2, F3)
    cache = OracleCache(tmp_path)
    plain = invariant_dims(spec, 1)
    first = invariant_dims(spec, 1, cache=cache)
    assert list(tmp_path.iterdir())
    second = invariant_dims(spec, 1, cache=cache)
    for d in plain:
        assert plain[d].dim == first[d].dim == second[d].dim
        assert plain[d].kernel == second[d].kernel


def test_corrupt_cache_entry_is_recomputed(F2, tmp_path):
    spec = GroupSpec("borel", 2, F2)
    cache = OracleCache(tmp_path)
    invariant_dims(spec, 1, cache=cache)
    for p in tmp_path.iterdir():
        p.write_text("{not json")
    assert invariant_dims(spec, 1, cache=cache)[0].dim == 1


def test_size_bound():
    with pytest.raises(SizeBound):
        check_size(2, 3, 3, max_cells=10)


@pytest.mark.parametrize("q,m,n,count", [(2, 1, 2, 3), (2, 2, 2, 10), (3, 1, 2, 3),
                                         (3, 2, 2, 13), (2, 3, 3, 106)])
def test_orbit_counts(q, m, n, count):
    assert orbit_count(GroupSpec("borel", n, field_new(q)), m) == count
    assert flag_count(q, m, n) == count


def test_rank_and_span(F2):
    a = poly_from_text(F2, 2, "x1")
    b = poly_from_text(F2, 2, "x2")
    total, by_deg = rank_of_family([a, b, a + b])
    assert total == 2 and by_deg == {1: 2}
    assert in_span_of(a + b, [a, b])
    assert not in_span_of(a * b, [a, b])


def test_compositions():
    assert sorted(all_compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
