import json
import subprocess
import sys

import pytest

from jacobi_mde.catalog import form
from jacobi_mde.cli import main, run, series_from_json


def test_expand_phi_0_1():
    code, out, err = run(["expand", "--form", "phi_0_1", "--q-order", "2"])
    assert code == 0
    assert out.splitlines() == [
        "q^0: ζ^-1 + 10 + ζ^1",
        "q^1: 10ζ^-2 − 64ζ^-1 + 108 − 64ζ^1 + 10ζ^2",
    ]
    assert err == ""


def test_expand_half_integral_exponents():
    _, out, _ = run(["expand", "--form", "theta", "--q-order", "2"])
    assert out.splitlines()[0] == "q^{1/8}: −ζ^{-1/2} + ζ^{1/2}"


def test_expand_json_round_trip():
    code, out, _ = run(["expand", "--form", "phi_0_3_half", "--q-order", "5", "--json"])
    assert code == 0
    obj = json.loads(out)
    assert set(obj) >= {"weight2", "index2", "trunc24", "terms"}
    keys = [(t["n24"], t["l2"]) for t in obj["terms"]]
    assert keys == sorted(keys)
    assert all("/" in t["c"] for t in obj["terms"])
    assert series_from_json(obj) == form("phi_0_3_half", 120)


def test_basis_fraction_flags():
    code, out, _ = run(["basis", "--weight", "-1", "--index", "1/2"])
    assert code == 0
    assert out.splitlines() == ["phi_-1_1_half", "dim 1"]
    _, out, _ = run(["basis", "--weight", "0", "--index", "2"])
    assert out.splitlines()[-1] == "dim 2"
    assert len(out.splitlines()) == 3


def test_verify_single_and_literal():
    code, out, _ = run(["verify", "--equation", "deq:K3"])
    assert code == 0 and "PASS" in out
    code, out, _ = run(["verify", "--equation", "deq:theta_pow4", "--literal"])
    assert code == 1 and "FAIL" in out


def test_verify_all_passes_and_shows_note():
    code, out, _ = run(["verify", "--all", "--q-order", "12"])
    assert code == 0
    rows = [l for l in out.splitlines() if l.startswith(("deq:", "id:"))]
    assert all(" PASS" in r for r in rows)
    theta4 = next(r for r in rows if r.startswith("deq:theta_pow4 "))
    assert "H_6 H_4 H_2" in theta4


def test_verify_json_deterministic():
    a = run(["verify", "--all", "--json"])[1]
    b = run(["verify", "--all", "--json"])[1]
    assert a == b
    assert json.loads(a)["all_pass"] is True


def test_discover_output():
    code, out, _ = run(["discover", "--form", "phi_0_1", "--max-degree", "3"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("degree 1: infeasible")
    assert lines[1].startswith("degree 2: infeasible")
    assert "101/4 E4" in lines[2] and "10 E6" in lines[2]
    code, _, _ = run(["discover", "--form", "phi_0_1", "--max-degree", "2"])
    assert code == 1


def test_discover_json():
    code, out, _ = run(["discover", "--form", "phi_0_3_half", "--max-degree", "1", "--json"])
    obj = json.loads(out)
    assert code == 0 and obj["equation"]["degree"] == 1 and obj["equation"]["coeffs"] == []


def test_genus_commands():
    code, out, _ = run(["genus", "--dim", "2", "--euler", "24", "--q-order", "1"])
    assert code == 0
    assert out.splitlines() == ["2 * phi_0_1", "q^0: 2ζ^-1 + 20 + 2ζ^1"]
    code, out, err = run(["genus", "--dim", "5", "--euler", "23", "--q-order", "1"])
    assert code == 0 and "non-integral" in err
    code, out, err = run(["genus", "--dim", "4", "--chi", "1,0,0,0,1"])
    assert code == 1 and "error" in err
    code, out, _ = run(["genus", "--dim", "4", "--chi", "1,0,0,0,1", "--json"])
    assert code == 1 and json.loads(out)["error"]["type"] == "InconsistentHodgeData"


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "--form", "nope"],
        ["expand", "--form", "phi_0_1", "--bogus"],
        ["expand", "--form", "phi_0_1", "--q-order", "0"],
        ["basis", "--weight", "1/3", "--index", "1"],
        ["verify"],
        ["discover", "--form", "E4", "--max-degree", "2"],
        ["genus", "--dim", "4", "--euler", "3"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    code, out, err = run(argv)
    assert code == 2
    assert err.startswith("jacobi-mde: error:")


def test_usage_error_json_object():
    code, out, _ = run(["expand", "--form", "nope", "--json"])
    assert code == 2
    assert json.loads(out)["error"]["type"] == "usage"


def test_main_writes_streams(capsys):
    assert main(["basis", "--weight", "0", "--index", "1"]) == 0
    assert capsys.readouterr().out == "phi_0_1\ndim 1\n"


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "jacobi_mde", "expand", "--form", "phi_-2_1", "--q-order", "1"],
        capture_output=True,
        text=True,
    )
    assert p.returncode == 0
    assert p.stdout == "q^0: ζ^-1 − 2 + ζ^1\n"
