import csv
import io
import json

import pytest
from click.testing import CliRunner

from su3cohom import classify
from su3cohom.cli import main, parse_slice, parse_tube
from su3cohom.errors import DescriptorParseError


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(main, list(args), env=env, catch_exceptions=False)

    return invoke


def test_tables_markdown(run):
    res = run("tables", "--bound", "5", "--output-format", "markdown")
    assert res.exit_code == 0
    assert res.output.count("### table") == 4
    line = next(l for l in res.output.splitlines() if l.startswith("| P(1) |") and "table2" in res.output)
    assert line.split("|")[4].strip() == "2"


def test_tables_json_bound1(run):
    res = run("tables", "--bound", "1", "--output-format", "json")
    data = json.loads(res.output)
    t4 = data[3]
    assert t4["table_id"] == "table4" and t4["cells"] == [] and t4["col_labels"] == []


def test_tables_csv_blocks(run):
    res = run("tables", "--output-format", "csv")
    blocks = res.output.split("# ")[1:]
    assert [b.splitlines()[0] for b in blocks] == ["table1", "table2", "table3", "table4"]
    rows = list(csv.reader(io.StringIO(blocks[1].split("\n", 1)[1])))
    assert rows[0] == ["M2\\M1", "S", "L", "P(1)", "P(3)", "P(5)"]
    assert rows[3][3] == "2"


def test_tables_deterministic(run):
    assert run("tables", "--output-format", "json").output == run("tables", "--output-format", "json").output


def test_tables_bad_bound(run):
    assert run("tables", "--bound", "0").exit_code == 2


@pytest.mark.parametrize(
    "a,b,n,code",
    [("S", "L", 1, 0), ("P(1)", "P(1)", 2, 0), ("F(0,2)", "Squot(2)", 1, 0), ("P(1)", "P(3)", 0, 1),
     ("F( 1 , 1 )", "P(3)", 1, 0)],
)
def test_classify(run, a, b, n, code):
    res = run("classify", a, b, "--output-format", "json")
    assert res.exit_code == code
    assert json.loads(res.output)["count"] == n


def test_classify_reason(run):
    res = run("classify", "P(1)", "P(1)")
    assert "TwoClasses" in res.output


@pytest.mark.parametrize("bad,token", [("Q(1)", "Q"), ("F(1)", "1"), ("P(x)", "x"), ("P(2)", "2")])
def test_classify_parse_error(run, bad, token):
    res = CliRunner().invoke(main, ["classify", bad, "S"])
    assert res.exit_code == 2
    assert repr(token) in res.output


def test_classify_incompatible(run):
    res = CliRunner().invoke(main, ["classify", "Squot(2)", "S"])
    assert res.exit_code == 2


def test_stabilizer(run):
    out = json.loads(run("stabilizer", "U2", "3", "--output-format", "json").output)
    assert out["type"] == "SingularType" and out["h"] == 1
    out = json.loads(run("stabilizer", "T2", "4", "6", "--output-format", "json").output)
    assert out["h"] == 2
    out = json.loads(run("stabilizer", "T2", "0", "1", "--output-format", "json").output)
    assert out["type"] == "RootType" and out["h"] == 1
    assert "h=1" in run("stabilizer", "SU2").output


def test_stabilizer_parse_error():
    res = CliRunner().invoke(main, ["stabilizer", "T2", "1"])
    assert res.exit_code == 2


def test_verify_torus_lemma(run):
    res = run("verify", "torus-lemma", "--bound", "3", "--output-format", "json")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["all_passed"] and "seed" not in data


def test_verify_consim_prints_seed_and_is_reproducible(run):
    a = run("verify", "consim", "--samples", "20", "--output-format", "json")
    b = run("verify", "consim", "--samples", "20", "--output-format", "json")
    assert a.exit_code == 0 and a.output == b.output
    assert json.loads(a.output)["seed"] == 42


def test_verify_env_overrides(run):
    res = run("verify", "consim", "--samples", "10", env={"SU3COHOM_SEED": "7", "SU3COHOM_FORMAT": "csv"})
    assert res.output.startswith("# seed 7")


def test_verify_tight_tolerance_fails():
    res = CliRunner().invoke(main, ["verify", "consim", "--samples", "10", "--tol-rank", "1e-16"])
    assert res.exit_code == 1
    assert "failed: consim_stabilizer_profile" in res.output


def test_verify_invalid_tolerance():
    res = CliRunner().invoke(main, ["verify", "consim", "--tol-mat", "2"])
    assert res.exit_code == 2


def test_parsers():
    assert parse_tube(" Lquot3 ") == classify.LQUOT3
    assert parse_tube("F(-1,2)") == classify.F(-1, 2)
    assert parse_slice(("T2 2", "-3")).q == -3
    with pytest.raises(DescriptorParseError) as info:
        parse_tube("Squot(h)")
    assert info.value.token == "h"
    with pytest.raises(DescriptorParseError):
        parse_slice(("U2", "4"))
