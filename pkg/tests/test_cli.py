import json
from pathlib import Path

import pytest

from quiver_cy.cli import main
from quiver_cy.document import dumps, load

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

CASES = {
    "check_d2": ["check-d2", "--input", "cycle3.json", "--cap", "10"],
    "derive": ["derive", "--input", "cycle3.json", "--arrow", "a"],
    "bracket": ["bracket", "--input", "cycle3.json", "--arrow", "a*"],
    "h0_dim": ["h0-dim", "--input", "a2.json", "--dim", "2", "--length", "6"],
    "build_ginzburg": ["build-ginzburg", "--input", "cycle3.json"],
    "build_ginzburg_frozen": ["build-ginzburg", "--input", "cycle3_frozen.json"],
    "check_quintuple": ["check-quintuple", "--input", "quintuple5.json"],
    "check_quintuple_adversarial": ["check-quintuple", "--input", "adversarial5.json"],
    "build_lazaroiu": ["build-lazaroiu", "--input", "quintuple5.json"],
    "check_cy": ["check-cy", "--input", "quintuple5.json"],
    "check_cy_frozen": ["check-cy", "--input", "cycle3_frozen.json"],
    "hochschild": ["hochschild", "--input", "cycle3.json", "--cap", "5"],
    "cyclic": ["cyclic", "--input", "cycle3.json", "--cap", "7"],
}


def run(argv, capsys):
    argv = [str(DATA / a) if a.endswith(".json") else a for a in argv]
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output(name, capsys):
    code, out, _ = run(CASES[name], capsys)
    expected = (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
    assert out == expected
    assert code == (1 if name.endswith("adversarial") else 0)


def test_headline_values(capsys):
    assert "d^2 = 0 (9 generators, effective cap 9)" in run(CASES["check_d2"], capsys)[1]
    assert "∂_a W = 1·b c" in run(CASES["derive"], capsys)[1]
    assert "{W, a*} = -1·b c" in run(CASES["bracket"], capsys)[1]
    assert run(CASES["h0_dim"], capsys)[1].splitlines()[-1] == "4"


def test_json_output(capsys):
    code, out, _ = run(CASES["h0_dim"] + ["--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 4 and data["exit"] == 0
    assert data["basis"] == ["e1", "e2", "a", "a*"]


def test_json_reports_invalid_quintuple(capsys):
    code, out, _ = run(CASES["check_quintuple_adversarial"] + ["--json"], capsys)
    assert code == 1 and json.loads(out)["exit"] == 1


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["check-d2", "--input", "bad_vertex.json"], "/arrows/0/target"),
        (["check-d2", "--input", "missing_target.json"], "/arrows/0"),
        (["check-d2", "--input", "no_such_file.json"], "No such file"),
        (["check-quintuple", "--input", "quintuple5.json", "--dim", "3"], "/quintuple/d"),
        (["derive", "--input", "cycle3.json", "--arrow", "zz"], "zz"),
    ],
)
def test_input_errors_exit_two(argv, fragment, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and fragment in err and out == ""


def test_bad_argument_value():
    with pytest.raises(SystemExit) as exc:
        main(["check-d2", "--input", str(DATA / "cycle3.json"), "--cap", "x"])
    assert exc.value.code == 2


@pytest.mark.parametrize("name", ["cycle3.json", "a2.json", "cycle3_frozen.json", "quintuple5.json", "adversarial5.json"])
def test_document_round_trip(name):
    doc = load((DATA / name).read_text(encoding="utf-8"))
    text = dumps(doc)
    assert dumps(load(text)) == text
