"""Command-line runs against checked-in fixtures and golden reports.

Set ``QKREIN_REGEN_GOLDEN=1`` to rewrite the golden files after an
intentional output change.
"""

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from qkrein import InnerProductSpace, fundamental_decomposition, self_polar
from qkrein.cli import run
from qkrein.io import load_matrix

HERE = Path(__file__).parent
FIX = HERE / "fixtures"
GOLDEN = HERE / "golden"


def fx(name):
    return str(FIX / name)


CASES = {
    "eig_herm3": ["eig", "--matrix", fx("herm3.json")],
    "decompose_diag": ["decompose", "--gram", fx("gram_diag.json")],
    "decompose_degenerate": ["decompose", "--gram", fx("gram_degenerate.json")],
    "decompose_offdiag_j": ["decompose", "--gram", fx("gram_offdiag_j.json")],
    "classify_e1": ["classify", "--gram", fx("gram_diag.json"), "--subspace", fx("sub_e1.json")],
    "classify_neutral": ["classify", "--gram", fx("gram_diag.json"), "--subspace", fx("sub_neutral.json")],
    "companion_neutral": ["companion", "--gram", fx("gram_diag.json"), "--subspace", fx("sub_neutral.json")],
    "orthocheck_neutral": ["orthocheck", "--gram", fx("gram_diag.json"), "--subspace", fx("sub_neutral.json")],
    "orthocheck_isotropic": ["orthocheck", "--gram", fx("gram_degenerate.json"), "--subspace", fx("sub_e2.json")],
    "selfpolar_diag": ["selfpolar", "--gram", fx("gram_selfpolar.json")],
    "stein_scalar": ["stein", "--a", fx("a_scalar.json"), "--c", fx("c_scalar.json"), "--n", fx("n_scalar.json")],
    "stein_random": ["stein", "--a", fx("a_random.json"), "--c", fx("c_random.json"), "--n", fx("n_random.json")],
    "stein_refused": ["stein", "--a", fx("a_scalar.json"), "--c", fx("c_scalar.json"), "--n", fx("n_large.json")],
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def relative(argv):
    # goldens record paths relative to the tests directory
    return [os.path.relpath(a, HERE) if a.startswith(str(HERE)) else a for a in argv]


@pytest.fixture(autouse=True)
def _in_tests_dir(monkeypatch):
    monkeypatch.chdir(HERE)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_and_deterministic(name):
    argv = relative(CASES[name])
    code1, out1, _ = invoke(argv)
    code2, out2, _ = invoke(argv)
    assert code1 == code2 == 0
    assert out1 == out2
    path = GOLDEN / f"{name}.json"
    if os.environ.get("QKREIN_REGEN_GOLDEN"):
        path.write_text(out1)
    assert out1 == path.read_text()
    report = json.loads(out1)
    assert set(report) == {"command", "inputs", "results", "tolerances", "passed"}
    assert report["command"] == argv[0]


def results(name):
    code, out, _ = invoke(relative(CASES[name]))
    assert code == 0
    return json.loads(out)


class TestReports:
    def test_decompose_signature(self):
        assert results("decompose_diag")["results"]["signature"] == [1, 1, 0]

    def test_selfpolar(self):
        r = results("selfpolar_diag")["results"]
        entries = r["Hinf"]["entries"]
        assert abs(entries[0][0][0] - 2.0) < 1e-14 and abs(entries[1][1][0] - 0.5) < 1e-14

    def test_orthocheck_neutral(self):
        assert results("orthocheck_neutral")["results"]["ortho_complemented"] is False

    def test_stein_refusal_report(self):
        rep = results("stein_refused")
        assert rep["passed"] is False and rep["results"]["scaffold"]["refused"] is True

    def test_numbers_equal_library(self):
        # the CLI is a thin wrapper: its floats are the library's floats
        M = load_matrix(FIX / "gram_selfpolar.json")
        lib = self_polar(InnerProductSpace(M))
        rep = results("selfpolar_diag")["results"]
        assert rep["history"] == lib.history
        assert rep["Hinf"]["entries"] == lib.Hinf.H.to_nested()
        D = fundamental_decomposition(InnerProductSpace(load_matrix(FIX / "gram_offdiag_j.json")))
        rep = results("decompose_offdiag_j")["results"]
        assert rep["lambdas"] == [float(x) for x in D.lambdas]


class TestErrors:
    def test_unknown_flag(self):
        code, out, err = invoke(["decompose", "--gram", fx("gram_diag.json"), "--bogus"])
        assert code == 1 and out == "" and "--bogus" in err

    def test_unknown_command(self):
        code, _, err = invoke(["frobnicate"])
        assert code == 1 and "invalid choice" in err

    def test_missing_file(self, tmp_path):
        code, _, err = invoke(["decompose", "--gram", str(tmp_path / "nope.json")])
        assert code == 1 and "cannot read" in err

    def test_malformed_json_location(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"rows": 1,\n "cols": 1,\n "entries": [[[1, 0, 0, 0]],]\n}')
        code, _, err = invoke(["eig", "--matrix", str(bad)])
        assert code == 1 and f"{bad}:3:" in err

    def test_bad_field(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"rows": 1, "cols": 2, "entries": [[[1, 0, 0, 0], [1, 0, 0]]]}))
        code, _, err = invoke(["eig", "--matrix", str(bad)])
        assert code == 1 and "entries[0][1]" in err

    def test_non_hermitian(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [[[1, 0, 0, 0], [1, 0, 0, 0]], [[0, 0, 0, 0], [1, 0, 0, 0]]]}))
        code, _, err = invoke(["decompose", "--gram", str(bad)])
        assert code == 1 and "Hermitian" in err

    def test_subspace_dimension_mismatch(self):
        code, _, err = invoke(["classify", "--gram", fx("gram_diag.json"), "--subspace", fx("a_random.json")])
        assert code == 1 and "rows" in err

    def test_selfpolar_nonconvergence(self):
        code, out, err = invoke(["selfpolar", "--gram", fx("gram_selfpolar.json"), "--max-iter", "2"])
        assert code == 2 and "numeric failure" in err
        rep = json.loads(out)
        assert rep["passed"] is False and len(rep["results"]["history"]) == 2

    def test_selfpolar_singular(self):
        code, out, err = invoke(["selfpolar", "--gram", fx("gram_degenerate.json")])
        assert code == 2 and "numeric failure" in err

    def test_stein_divergence(self, tmp_path):
        a = tmp_path / "a.json"
        a.write_text(json.dumps({"rows": 1, "cols": 1, "entries": [[[1.5, 0, 0, 0]]]}))
        code, out, err = invoke(["stein", "--a", str(a), "--c", fx("c_scalar.json"), "--n", fx("n_scalar.json")])
        assert code == 2 and json.loads(out)["passed"] is False

    def test_eig_sweep_limit(self):
        code, _, err = invoke(["eig", "--matrix", fx("herm3.json"), "--max-iter", "1"])
        assert code == 2

    def test_help_lists_defaults(self):
        code, out, _ = invoke(["selfpolar", "--help"])
        assert code == 0
        assert "default 1e-12" in out and "default 200" in out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qkrein", "decompose", "--gram", fx("gram_diag.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["signature"] == [1, 1, 0]
