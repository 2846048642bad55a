import io
import json
import shutil

import pytest

from g2micro import cli
from g2micro.fixtures import default_dir


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_orbits_tsv():
    code, out, _ = run("orbits", "--pair", "g2")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].split("\t") == ["id", "p_word", "dim", "nature_a1", "nature_a2", "closed"]
    assert len(lines) == 11
    assert lines[10].split("\t")[1] == "s2s1s2s1s2s1"


def test_cc_tsv_has_thirteen_parameter_columns():
    code, out, _ = run("cc", "--pair", "g2", "--format", "tsv")
    rows = [ln.split("\t") for ln in out.splitlines()]
    assert code == 0
    assert len(rows[0]) == 14 and len(rows) == 11
    assert rows[2][7] == "2"  # chi_S1(xi6)


def test_glambda():
    assert run("glambda", "--lambda", "3,5")[1] == "G2; K options: SL2xSL2, G2\n"
    assert run("glambda", "--lambda", "1/7,1/5")[1] == "Torus; K options: Torus\n"


def test_euler_tsv():
    code, out, _ = run("euler", "--case", "integral", "--format", "tsv")
    rows = [ln.split("\t") for ln in out.splitlines()]
    assert code == 0 and len(rows) == 11
    assert rows[2][7] == "-1"  # a(S1, S6)


def test_json_schema_and_provenance():
    for cmd in (["orbits"], ["hasse", "--format", "json"], ["coherent", "--format", "json"],
                ["cc"], ["wact"], ["packets"], ["singular", "subregular"],
                ["euler", "--case", "subregular"], ["glambda", "--lambda", "3,5"]):
        argv = cmd + ([] if "--format" in cmd else ["--format", "json"])
        code, out, _ = run(*argv)
        assert code == 0, cmd
        assert json.loads(out)["schema"] == 1
    payload = json.loads(run("singular", "subregular", "--format", "json")[1])
    assert payload["provenance"]["fibre:0"] == "stated"
    assert payload["q_orbits"][0]["handle"] == "psi_b"


def test_hasse_dot_default():
    code, out, _ = run("hasse", "--pair", "sl3")
    assert code == 0 and out.startswith("digraph sl3_gl2")


def test_output_is_deterministic():
    for cmd in (["cc"], ["packets", "--format", "json"], ["hasse"]):
        assert run(*cmd) == run(*cmd)


def test_nonintegral_pair_commands():
    code, out, _ = run("packets", "--pair", "sl3")
    assert code == 0 and out.splitlines()[1] == "S0\tpi(xi0)"
    assert run("euler", "--case", "nonintegral")[0] == 0


@pytest.mark.parametrize("argv", [
    ["bogus"], ["orbits", "--pair", "f4"], ["glambda"], ["glambda", "--lambda", "1"],
    ["singular", "regular"], ["cc", "--bound", "0"], ["cc", "--format", "dot"],
    ["orbits", "extra"], ["euler", "--case", "other"],
])
def test_bad_arguments_exit_one(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert out == ""
    assert err


def test_missing_fixture_dir_exits_two(tmp_path):
    assert run("orbits", "--fixtures", str(tmp_path / "nowhere"))[0] == 2


def test_broken_fixture_exits_two(tmp_path):
    for f in default_dir().glob("*.tsv"):
        shutil.copy(f, tmp_path)
    (tmp_path / "coherent_sl3.tsv").write_text("generator\tsource_id\n")
    assert run("coherent", "--pair", "sl3", "--fixtures", str(tmp_path))[0] == 2


def test_solver_non_uniqueness_exits_three(monkeypatch):
    from g2micro import ccsolver

    def ambiguous(*args, **kwargs):
        raise ccsolver.NonUniqueError("2 solutions", [{}, {}])

    monkeypatch.setattr(ccsolver, "solve", ambiguous)
    assert run("cc", "--bound", "5")[0] == 3


def test_selftest_exit_zero():
    code, out, _ = run("selftest")
    assert code == 0
    assert out.count("[PASS]") == 12
