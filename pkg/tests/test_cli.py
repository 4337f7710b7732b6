import io
import json

import pytest

from borelinv.cli import EXIT_FAILED, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_verify_borel_small():
    code, out = run("verify", "--field", "2", "--m", "1", "--n", "2", "--group", "borel")
    assert code == 0
    assert "series computed: 1 + t + t^2" in out


def test_basis_json():
    code, out = run("basis", "--field", "2", "--m", "1", "--n", "2", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["indices"]) == 3


def test_verify_json_schema():
    code, out = run("verify", "--field", "3", "--m", "1", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert {"case", "checks", "series", "counts"} <= set(data)
    assert {"basis", "orbits", "flags"} <= set(data["counts"])


def test_hilbert_with_oracle():
    code, out = run("hilbert", "--field", "2", "--m", "2", "--n", "1", "--oracle",
                    "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["match"]
    assert data["expected"] == "1 + t + t^2 + t^3"


def test_orbits():
    code, out = run("orbits", "--field", "2", "--m", "1", "--n", "2")
    assert code == 0 and "orbits=3" in out


def test_parabolic_verify_and_figures(tmp_path):
    code, _ = run("verify", "--field", "2", "--m", "2", "--n", "3", "--group", "parabolic",
                  "--alpha", "2,1", "--figure-dir", str(tmp_path))
    assert code == 0
    assert any(p.suffix == ".png" for p in tmp_path.iterdir())


def test_identities_subset():
    code, out = run("identities", "--field", "3", "--only", "dickson_forms", "--seed", "1")
    assert code == 0 and "dickson_forms" in out


@pytest.mark.parametrize("argv", [
    ("verify", "--field", "6", "--n", "2"),
    ("verify", "--group", "parabolic", "--n", "2"),
    ("verify", "--group", "parabolic", "--alpha", "1,1", "--n", "3"),
    ("verify", "--alpha", "0,1"),
    ("basis", "--m", "-1"),
    ("nonsense",),
])
def test_usage_errors(argv, capsys):
    code, _ = run(*argv)
    assert code == EXIT_USAGE
    assert capsys.readouterr().err


def test_check_failure_exit_code(monkeypatch):
    import borelinv.cli as cli
    from borelinv.report import VerifyReport

    def broken(*a, **k):
        rep = VerifyReport({"q": 2, "m": 1, "n": 1, "group": "borel"})
        rep.add("spanning", False, {"degree": 1, "kernel_vector": "x1"})
        return rep

    monkeypatch.setattr(cli, "verify_borel", broken)
    code, out = run("verify", "--n", "1", "--format", "json")
    assert code == EXIT_FAILED
    assert json.loads(out)["checks"][0]["witness"]["degree"] == 1


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "borelinv", "basis", "--m", "1", "--n", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "2 elements" in res.stdout
