import json

import pytest

from higherss import cli
from higherss import verify as V

from conftest import SAMPLES


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_page_first(capsys):
    code, out, _ = run(capsys, "page", "--input", str(SAMPLES / "square.json"), "--word", "", "--position", "0,0")
    doc = json.loads(out)
    assert code == 0 and doc["dims"] == {"0": 1, "1": 0, "2": 0}


def test_page_final_is_limit(capsys):
    sq = str(SAMPLES / "square.json")
    _, lim, _ = run(capsys, "limit", "--input", sq)
    code, out, _ = run(capsys, "page", "--input", sq, "--word", "121^e2^e", "--position", "0,0")
    assert code == 0 and json.loads(out)["dims"] == json.loads(lim)["dims"]


def test_bad_word(capsys):
    code, out, err = run(capsys, "page", "--input", str(SAMPLES / "square.json"), "--word", "1e", "--position", "0,0")
    assert code == 2 and "condition 3" in err and out == ""


@pytest.mark.parametrize("argv", [
    ("page", "--input", "missing.json", "--word", "", "--position", "0,0"),
    ("page", "--input", str(SAMPLES / "square.json"), "--word", "", "--position", "0"),
    ("page", "--input", str(SAMPLES / "square.json"), "--word", "", "--position", "a,b"),
    ("diff", "--input", str(SAMPLES / "square.json"), "--word", "", "--position", "0,0", "--j", "3"),
    ("draw-b", "--word", "1", "--n", "4", "--format", "svg"),
])
def test_user_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("j1,omega", [("1", "12121^e2^e"), ("2", "12112^e1^e")])
def test_plan(capsys, j1, omega):
    code, out, _ = run(capsys, "plan", "--normal", "3,5", "--j1", j1)
    assert code == 0 and json.loads(out)["omega"] == omega


def test_plan_not_primitive(capsys):
    code, _, err = run(capsys, "plan", "--normal", "4,6", "--j1", "1")
    assert code == 2 and "primitive" in err


def test_draw(capsys):
    _, one, _ = run(capsys, "draw-b", "--word", "1")
    assert one.count("@") == 1 and one.count("#") == 1
    _, empty, _ = run(capsys, "draw-b", "--word", "")
    assert empty.count("@") == 1 and "#" not in empty


def test_commands_run(capsys):
    sq = str(SAMPLES / "square.json")
    for cmd in ("diff", "saturate", "extend"):
        code, out, _ = run(capsys, cmd, "--input", sq, "--word", "", "--position", "1,1", "--j", "1")
        assert code == 0 and json.loads(out)


def test_internal_error_exit(capsys, monkeypatch):
    def boom(*a, **k):
        raise AssertionError("broken invariant")
    monkeypatch.setitem(cli.HANDLERS, "limit", boom)
    code, _, err = run(capsys, "limit", "--input", str(SAMPLES / "square.json"))
    assert code == 1 and "internal" in err


@pytest.fixture
def quick_suites(monkeypatch):
    """Shrink the enumerated suites so the verify driver runs in seconds."""
    monkeypatch.setattr(V, "deterministic_suites", lambda: V.word_lemma_suite(2, 3) + V.worked_values_suite() + V.planner_suite(5))


def test_verify_trials_zero(capsys, quick_suites):
    code, out, _ = run(capsys, "verify", "--trials", "0")
    summary = json.loads(out.strip().splitlines()[-1])
    assert code == 0 and summary["failed"] == 0
    assert not any(l.split()[1].startswith(("theorem", "classical")) for l in out.splitlines()[:-1])


def test_verify_reproducible(capsys, quick_suites):
    first = run(capsys, "verify", "--seed", "4", "--trials", "1")
    second = run(capsys, "verify", "--seed", "4", "--trials", "1")
    assert first == second and first[0] == 0


def test_verify_injected_fault(capsys, quick_suites, monkeypatch):
    monkeypatch.setattr(V, "fibonacci", lambda m: 1)
    code, out, _ = run(capsys, "verify", "--trials", "0")
    summary = json.loads(out.strip().splitlines()[-1])
    assert code == 1 and summary["failed"] > 0
    assert summary["first_failure"]["check"] == "worked.fibonacci"
    assert "--seed 0" in summary["first_failure"]["replay"]


def test_verify_bad_prime(capsys):
    assert run(capsys, "verify", "--prime", "4")[0] == 2
