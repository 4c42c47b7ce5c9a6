import io
import json

from semigroup_forge import cli


def call(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), out=buf)
    return code, buf.getvalue()


def test_show_dyck():
    code, text = call("numsgp", "show", "--gens", "3,8", "--dyck")
    assert code == 0
    assert "weight" in text and "14" in text


def test_list_jsonl():
    code, text = call("numsgp", "list", "--genus", "4")
    lines = [json.loads(l) for l in text.splitlines() if l.strip()]
    assert code == 0 and len(lines) == 7


def test_valsgp_check_exit_codes():
    assert call("valsgp", "check", "--elements", "[[0,0],[1,1]]")[0] == 0
    code, text = call("valsgp", "check", "--elements", "[[0,0],[0,2]]", "--conductor", "1,3")
    assert code == 1 and "locality" in text


def test_enumerate_diff():
    code, text = call("valsgp", "enumerate", "--genus", "3", "--branches", "4", "--diff-catalog")
    assert code == 0
    code, _ = call("valsgp", "enumerate", "--genus", "4", "--branches", "2", "--diff-catalog")
    assert code == 1  # the enumerator finds classes the hand list omits


def test_generators():
    code, text = call("valsgp", "generators", "--elements", "[[0,0],[1,1],[2,2]]")
    assert code == 0 and "(2,∞)" in text


def test_usage_errors():
    assert call("numsgp", "show", "--gens", "4,6")[0] == 2
    assert call("conditions", "ledger", "--n", "2")[0] == 2
    assert call("nonsense")[0] == 2


def test_ledger_and_gapcond():
    code, text = call("conditions", "ledger", "--case", "7", "--n", "5")
    assert code == 0 and json.loads(text.splitlines()[0])["net"] == 18
    assert call("gapcond", "run", "--case", "3,8")[0] == 0


def test_conditions_verify_small():
    assert call("conditions", "verify", "--samples", "5")[0] == 0


def test_report_is_deterministic(monkeypatch):
    a = call("report", "--format", "json")[1]
    b = call("report", "--format", "json", "--jobs", "2")[1]
    monkeypatch.setenv("SEMIGROUP_FORGE_SEED", "20170")
    c = call("report", "--format", "json")[1]
    assert a == b == c
    assert json.loads(a)["checks"][0]["criterion"] == 1
