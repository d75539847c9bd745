import json

import pytest

from qcrystal.cli import main
from qcrystal.suites import UsageError, run_suite, suite_names


def _run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_qdet_suite_example():
    reports = run_suite("qdet", {"n": 1})
    r = next(r for r in reports if r.check == "qdet")
    assert r.passed and r.witness == "u11*u22 - t*u12*u21 = 1"


def test_uq_relations_suite_example():
    assert all(r.passed for r in run_suite("uq-relations", {"n": 2, "power": 3}))


def test_suite_names_and_errors():
    assert "all" in suite_names() and len(suite_names()) == 14
    with pytest.raises(UsageError):
        run_suite("nope")
    with pytest.raises(UsageError):
        run_suite("qdet", {"n": "x"})
    with pytest.raises(UsageError):
        run_suite("all", {"n": 1})
    with pytest.raises(UsageError):
        run_suite("triangular", {"order": "sideways"})


def test_cli_run_json(capsys):
    code, out = _run(capsys, ["run", "qdet", "--n", "1"])
    assert code == 0
    data = json.loads(out)
    assert {d["check"] for d in data} == {"qdet", "qdet-central"}
    assert all(set(d) >= {"check", "params", "status"} for d in data)


def test_cli_text_format(capsys):
    code, out = _run(capsys, ["run", "uq-relations", "--n", "1", "--power", "2", "--format", "text"])
    assert code == 0 and out.startswith("PASS")


def test_cli_is_deterministic(capsys):
    argv = ["run", "frt-confluence", "--n", "1", "--words", "20", "--seed", "7"]
    _, first = _run(capsys, argv)
    _, second = _run(capsys, argv)
    assert first == second
    _, other = _run(capsys, argv[:-1] + ["8"])
    assert '"seed": 8' in other


def test_cli_failure_exit_code(capsys):
    code, out = _run(capsys, ["run", "triangular", "--algebra", "sl2", "--omega", "2"])
    assert code == 1
    assert json.loads(out)[0]["status"] == "fail"


def test_cli_usage_errors(capsys):
    assert main(["soibelman", "--n", "1", "--entry", "3,1"]) == 2
    assert main(["soibelman", "--n", "1", "--q", "2"]) == 2
    assert main(["rep", "fund("]) == 2
    assert main(["run", "dual-lattice", "--n", "2", "--lam", "1"]) == 2
    with pytest.raises(SystemExit) as e:
        main(["run", "nope"])
    assert e.value.code == 2


def test_cli_soibelman_modes(capsys):
    for mode in ("exact", "float", "leading"):
        code, out = _run(capsys, ["soibelman", "--n", "1", "--cutoff", "8", "--window", "4",
                                  "--entry", "1,2", "--mode", mode])
        assert code == 0, out
        assert json.loads(out)[0]["params"]["mode"] == mode


def test_cli_word_override(capsys):
    code, out = _run(capsys, ["soibelman", "--n", "2", "--cutoff", "6", "--window", "3", "--word", "2,1,2"])
    assert code == 0 and json.loads(out)[0]["params"]["word"] == "2,1,2"


def test_cli_crystal_limit_and_compare(capsys):
    code, out = _run(capsys, ["crystal-limit", "--n", "1", "--scaled", "--cutoff", "8", "--window", "4"])
    assert code == 0 and len(json.loads(out)) == 4
    code, out = _run(capsys, ["crystal-limit", "--n", "1", "--mode", "numeric", "--cutoff", "8", "--window", "4"])
    assert code == 0 and all(d["max_error"] < 1e-6 for d in json.loads(out))
    code, out = _run(capsys, ["compare", "--n", "1", "--q", "1/10", "--cutoff", "8", "--window", "4"])
    assert code == 0


def test_cli_rep(capsys):
    code, out = _run(capsys, ["rep", "hw(tensor(fund(1),fund(1)),2)"])
    assert code == 0
    assert json.loads(out)[0]["params"]["dim"] == 3
