import io
import json
import subprocess
import sys

import pytest

from confbetti.cli import RunConfig, main, run
from confbetti.manifold import catalog, dumps


def invoke(*args):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        try:
            code = main(list(args))
        except SystemExit as exc:
            code = exc.code
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def test_betti_json():
    code, out, _ = invoke("betti", "--manifold", "S2", "--k", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["betti"] == [[2, [1]]]
    assert doc["top_degree"] == 4 and doc["d"] == 2 and doc["manifold"] == "S2"


def test_scan_monotone_s2():
    code, out, _ = invoke("scan-monotone", "--manifold", "S2", "--k-max", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["violations"] == [{"before": 1, "after": 0, "degree": 2, "k": 1}]
    code, out, _ = invoke("scan-monotone", "--manifold", "S2", "--k-max", "3")
    assert "degree 2: k=1 -> 2: 1 -> 0" in out


def test_check_decomposition_hypothesis_exit():
    code, _, err = invoke("check-decomposition", "--manifold", "S2", "--k", "2")
    assert code == 2
    assert "hypothesis" in err


def test_check_decomposition_passes():
    code, out, _ = invoke("check-decomposition", "--manifold", "Klein", "--k", "4", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_scan_stability():
    code, out, _ = invoke("scan-stability", "--manifold", "R2", "--k-max", "8", "--degree", "1",
                          "--format", "json")
    assert code == 0
    assert json.loads(out)["stabilization"] == {"1": 2}


def test_csv_rows():
    code, out, _ = invoke("betti", "--manifold", "RP2", "--k", "3", "--format", "csv")
    assert out.splitlines() == ["k,degree,value", "3,0,1", "3,1,0", "3,2,0", "3,3,1"]


def test_validate_file(tmp_path):
    p = tmp_path / "s2.json"
    p.write_text(dumps(catalog("S2")))
    assert invoke("validate", "--manifold-file", str(p))[0] == 0
    raw = json.loads(p.read_text())
    raw["hc_twisted"] = [1, 0, 2]
    p.write_text(json.dumps(raw))
    code, _, err = invoke("validate", "--manifold-file", str(p))
    assert code == 1 and "connectedness" in err
    code, out, _ = invoke("validate", "--manifold-file", str(p), "--format", "json")
    assert code == 1 and json.loads(out)["valid"] is False


def test_file_betti_matches_catalog(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(dumps(catalog("Sigma1_1")))
    a = invoke("betti", "--manifold-file", str(p), "--k", "4", "--format", "json")[1]
    b = invoke("betti", "--manifold", "Sigma1_1", "--k", "4", "--format", "json")[1]
    assert json.loads(a)["betti"] == json.loads(b)["betti"]


@pytest.mark.parametrize("args", [
    ("betti", "--manifold", "nope", "--k", "2"),
    ("betti", "--manifold-file", "/nonexistent.json", "--k", "2"),
    ("betti", "--manifold", "S2"),
    ("frobnicate",),
    ("betti", "--manifold", "S2", "--k", "2", "--format", "xml"),
])
def test_input_errors_exit_1(args):
    assert invoke(*args)[0] == 1


def test_malformed_document(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert invoke("betti", "--manifold-file", str(p), "--k", "1")[0] == 1


def test_internal_check_exit_3(monkeypatch):
    from confbetti import cli
    from confbetti.errors import InternalCheckError

    def broken(m, k):
        raise InternalCheckError("forced")
    monkeypatch.setattr(cli, "euler", broken)
    assert run(RunConfig("betti", manifold="S2", k=2), io.StringIO(), io.StringIO()) == 3


def test_catalog_listing_and_dump():
    code, out, _ = invoke("catalog", "--format", "json")
    assert "Klein" in json.loads(out)["catalog"]
    code, out, _ = invoke("catalog", "--manifold", "RP2")
    assert json.loads(out)["hc_twisted"] == [0, 0, 1]


@pytest.mark.parametrize("args", [
    ("betti", "--manifold", "Sigma2", "--k", "5", "--format", "json"),
    ("scan-monotone", "--manifold", "Klein", "--k-max", "5", "--format", "json"),
    ("scan-stability", "--manifold", "S2", "--k-max", "6", "--format", "json"),
    ("check-decomposition", "--manifold", "Sigma1_1", "--k", "4", "--format", "json"),
])
def test_json_round_trip_and_determinism(args):
    first = invoke(*args)[1]
    assert invoke(*args)[1] == first
    assert json.dumps(json.loads(first), sort_keys=True) + "\n" == first

    def no_floats(text):
        raise AssertionError(f"float in output: {text}")
    json.loads(first, parse_float=no_floats)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "confbetti", "betti", "--manifold", "R2", "--k", "3",
                          "--format", "json"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["betti"] == [[3, [1, 1]]]
