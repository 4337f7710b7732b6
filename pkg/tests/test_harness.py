import json

import pytest

from borelinv.groups import GroupSpec
from borelinv.harness import (_family_checks, as_field, run_grid, summarize, verify_borel,
                              verify_gl, verify_identities, verify_parabolic)
from borelinv.mpoly import poly_from_text
from borelinv.report import OracleCache, VerifyReport, render
from borelinv.series import c_alpha_m


def outcome(rep):
    return rep.status, rep.series.get("computed"), rep.series.get("oracle")


def strip_timing(rep):
    d = rep.to_json()
    d.pop("timing")
    return d


def test_borel_small_case():
    rep = verify_borel(2, 1, 2)
    assert rep.passed
    assert rep.series["computed"] == "1 + t + t^2"
    assert rep.counts == {"basis": 3, "flags": 3, "orbits": 3}


def test_borel_extension_field():
    rep = verify_borel("2^2", 1, 2)
    assert rep.passed, rep.to_text()


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (2, 3)])
def test_parabolic_extremes_match_theorem_and_gl(m, n):
    assert outcome(verify_parabolic(2, m, (1,) * n)) == outcome(verify_borel(2, m, n))
    assert outcome(verify_parabolic(2, m, (n,))) == outcome(verify_gl(2, m, n))


def test_parabolic_reports_are_conjectures():
    rep = verify_parabolic(2, 2, "1,2")
    assert rep.conjecture and rep.passed
    assert rep.to_json()["kind"] == "conjecture"


def test_cache_does_not_change_outcome(tmp_path):
    cold = verify_borel(3, 1, 2)
    warm1 = verify_borel(3, 1, 2, cache=OracleCache(tmp_path))
    warm2 = verify_borel(3, 1, 2, cache=OracleCache(tmp_path))
    assert strip_timing(cold) == strip_timing(warm1) == strip_timing(warm2)


def test_identities_are_deterministic_per_seed():
    a = verify_identities(3, seed=5, only={"iterated_delta", "delta_square_zero"})
    b = verify_identities(3, seed=5, only={"iterated_delta", "delta_square_zero"})
    assert a.passed
    assert strip_timing(a) == strip_timing(b)
    assert a.case_label() == "q=3 identities seed=5"


def test_parallel_grid_matches_serial():
    pts = [(2, 1, 1), (2, 1, 2), (3, 1, 2)]
    serial = run_grid(pts, "borel")
    parallel = run_grid(pts, "borel", workers=2)
    assert [strip_timing(r) for r in serial] == [strip_timing(r) for r in parallel]
    assert summarize(serial)["passed"] == 3


def test_failure_carries_witness():
    F = as_field(2)
    spec = GroupSpec("borel", 2, F)
    x1 = poly_from_text(F, 2, "x1")
    rep = VerifyReport({"q": 2, "m": 1, "n": 2, "group": "borel"})
    _family_checks(rep, spec, 1, [x1, x1], c_alpha_m(2, 1, (1, 1)), 10 ** 6, None)
    assert not rep.passed
    assert rep.check("independence").witness == {"degree": 1}
    span = rep.check("spanning").witness
    assert span["degree"] == 0 and span["kernel_vector"] == "1"
    assert json.loads(render([rep], "json"))["status"] == "fail"


def test_non_invariant_family_is_flagged():
    F = as_field(2)
    rep = VerifyReport({})
    _family_checks(rep, GroupSpec("borel", 2, F), 1, [poly_from_text(F, 2, "x2")],
                   c_alpha_m(2, 1, (1, 1)), 10 ** 6, None)
    assert rep.check("invariance").status == "fail"


def test_render_formats():
    rep = verify_borel(2, 1, 1)
    assert render([rep], "csv").splitlines()[0] == "case,check,status,detail"
    assert "tabular" in render([rep], "latex")
    assert render([rep], "text").startswith("q=2 m=1 n=1 borel: PASS")
    data = json.loads(render([rep], "json"))
    assert set(data) >= {"case", "checks", "series", "counts"}
    assert set(data["series"]) >= {"expected", "computed"}
