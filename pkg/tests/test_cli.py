import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "refmod.cli", *args], capture_output=True, text=True
    )


def test_gamma0_info_json():
    res = run_cli("gamma0", "info", "12")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["results"]["index"] == 24
    assert payload["results"]["nu_inf"] == 6
    widths = {c["cusp"]: c["width"] for c in payload["results"]["cusps"]}
    assert widths == {"1/1": 12, "1/2": 3, "1/3": 4, "1/4": 3, "1/6": 1, "oo": 1}


def test_gamma0_info_tsv():
    res = run_cli("gamma0", "info", "17", "--format", "tsv")
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "17\t18\t2\t0\t2\t1"


def test_char_eval():
    res = run_cli("char", "eval", "--level", "3", "--quad", "3", "--matrix", "2,1,3,2")
    payload = json.loads(res.stdout)
    assert payload["results"]["value"] == "e(1/2)"


def test_char_eval_precondition():
    res = run_cli("char", "eval", "--level", "3", "--quad", "5", "--matrix", "1,0,3,1")
    assert res.returncode == 2


def test_usage_error_exit_64():
    res = run_cli("frobnicate")
    assert res.returncode == 64
    res2 = run_cli("gamma0", "info", "12", "--unknown-flag")
    assert res2.returncode == 64


def test_eta_classify_and_expand():
    res = run_cli("eta", "classify", "6")
    payload = json.loads(res.stdout)
    assert len(payload["results"]) == 15
    res2 = run_cli(
        "eta", "expand", "--level", "3", "--exponents", "1:-3,3:9", "--prec", "6"
    )
    payload2 = json.loads(res2.stdout)
    assert payload2["results"]["weight"] == "3"
    terms = dict((k, v) for k, v in payload2["results"]["series"]["terms"])
    assert terms[24] == "1/1" and terms[48] == "3/1"
    res3 = run_cli("eta", "expand", "--level", "2", "--exponents", "1:1")
    assert res3.returncode == 2  # inadmissible


def test_eta_expand_at_zero():
    res = run_cli(
        "eta", "expand", "--level", "1", "--exponents", "1:24", "--at", "zero", "--prec", "4"
    )
    payload = json.loads(res.stdout)
    assert payload["results"]["tau_power"] == "12"


def test_dims_cli():
    res = run_cli("dims", "--level", "3", "--weight", "9", "--quad", "3", "--cusp-forms")
    payload = json.loads(res.stdout)
    assert payload["results"]["dimension"] == 2
    res2 = run_cli("dims", "--level", "19", "--weight", "1", "--quad", "19")
    payload2 = json.loads(res2.stdout)
    assert payload2["results"]["decided"] is False


def test_weil_check_cli():
    res = run_cli("weil", "check", "--symbol", "3^{-1}", "--samples", "3")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    for key in ("orthogonality", "S_squared", "ST_cubed", "scalar_permutation", "support_containment"):
        assert payload["results"][key] is True


def test_disc_enumerate_cli():
    res = run_cli("disc", "enumerate", "--level", "3", "--max-order", "9")
    payload = json.loads(res.stdout)
    names = [r["symbol"] for r in payload["results"]]
    assert names == ["1", "3^{+1}", "3^{-1}", "3^{+2}", "3^{-2}"]


def test_reflective_search_cli(tmp_path):
    out = tmp_path / "report.json"
    res = run_cli(
        "reflective", "search", "--level", "5", "--sig-min", "-8", "--sig-max", "-8",
        "--max-order", "25", "--out", str(out), "--format", "tsv",
    )
    assert res.returncode == 0
    lines = res.stdout.splitlines()
    assert lines[0].startswith("symbol\t")
    assert any(line.startswith("5^{-1}\t-8\t") and line.endswith("guaranteed") for line in lines)
    data = json.loads(out.read_text())
    assert any(d["symbol"] == "5^{-1}" and d["verdict"] == "guaranteed" for d in data)


def test_selftest():
    res = run_cli("selftest")
    assert res.returncode == 0
    assert "FAIL" not in res.stdout
    assert res.stdout.strip().endswith("OK: 0 failures")
