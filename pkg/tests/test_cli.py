import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

from ramify import cli
from ramify.io import load_tower, parse_element, parse_poly, parse_range, parse_rational
from ramify.errors import ValidationError

ROOT = Path(__file__).resolve().parent.parent
TOWERS = ROOT / "docs" / "towers"
PROBLEMS = ROOT / "docs" / "problems"
SCHEMAS = ROOT / "docs" / "schemas"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def _registry():
    reg = Registry()
    for f in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(f.read_text())
        reg = reg.with_resource(doc["$id"], Resource.from_contents(doc))
    return reg


REGISTRY = _registry()
REPORT_SCHEMA = json.loads((SCHEMAS / "report.schema.json").read_text())


def validate_report(doc):
    jsonschema.Draft202012Validator(REPORT_SCHEMA, registry=REGISTRY).validate(doc)


def assert_no_floats(doc):
    if isinstance(doc, float):
        raise AssertionError("float in report")
    if isinstance(doc, dict):
        for v in doc.values():
            assert_no_floats(v)
    if isinstance(doc, list):
        for v in doc:
            assert_no_floats(v)


def test_different_on_cyclotomic_tower():
    code, out, _ = run("different", "--tower", TOWERS / "cyclotomic3_1.json")
    assert code == 0
    doc = json.loads(out)
    assert doc["total"] == [1, 2]
    assert doc["config"]["threshold"] == [1, 4]


def test_vg_z():
    code, out, _ = run("vg", "--group", "Z")
    assert code == 0 and json.loads(out)["dr_condition"] is False


def test_defect_problems():
    code, out, _ = run("defect", "--problem", PROBLEMS / "indep.json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "Independent" and doc["omega_zero"] is True
    code, out, _ = run("defect", "--problem", PROBLEMS / "dep.json")
    doc = json.loads(out)
    assert doc["verdict"] == "Dependent" and doc["gap"] == [2, 1]


COMMANDS = [
    ("vg", "--group", "Z[1/3] x Z"),
    ("vg", "--problem", PROBLEMS / "open_cut.json"),
    ("field", "--tower", TOWERS / "q2_root4.json", "--element", "th2^3 + 2*th1"),
    ("different", "--tower", TOWERS / "q2_root4.json", "--cross-check"),
    ("omega", "--tower", TOWERS / "cyclotomic3_2.json"),
    ("dual-basis", "--tower", TOWERS / "q3_unramified2.json"),
    ("idempotent", "--tower", TOWERS / "q3_unramified2.json"),
    ("idempotent", "--tower", TOWERS / "laurent2_as.json", "--eps", "2"),
    ("tower-scan", "--family", "constant", "--p", "5", "--n", "1..3"),
    ("tower-scan", "--family", "cyclotomic", "--p", "3", "--n", "1..2", "--kprime", PROBLEMS / "kprime_cuberoot3.json"),
    ("frobenius", "--family", "cyclotomic", "--p", "3", "--x", "th1", "--mmax", "2"),
    ("defect", "--problem", PROBLEMS / "dep.json"),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(str(x) for x in a[:2]))
def test_reports_validate_and_are_deterministic(argv):
    code, out, err = run(*argv, "--json")
    assert code == 0, err
    doc = json.loads(out)
    validate_report(doc)
    assert_no_floats(doc)
    assert out == run(*argv, "--json")[1]
    assert out == json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(str(x) for x in a[:2]))
def test_csv_and_pretty_modes(argv):
    code, out, _ = run(*argv, "--csv")
    assert code == 0 and out.startswith("# {")
    code, out, _ = run(*argv, "--pretty")
    assert code == 0 and out.startswith("ramify ")


def test_tower_scan_csv_columns():
    code, out, _ = run("tower-scan", "--family", "constant", "--p", "5", "--n", "1..2", "--csv")
    lines = out.splitlines()
    assert lines[1] == "n,v_delta_num,v_delta_den,monotone,verdict"
    assert lines[2] == "1,1,2,true,NotDeeplyRamified"


def test_exit_codes():
    assert run("bogus")[0] == 64
    assert run("different", "--nope")[0] == 64
    assert run()[0] == 64
    assert run("different")[0] == 2
    assert run("different", "--tower", "missing.json")[0] == 2
    assert run("different", "--tower", TOWERS / "cyclotomic3_1.json", "--precision", "4")[0] == 2
    assert run("vg", "--group", "R")[0] == 2
    assert run("field", "--tower", TOWERS / "cyclotomic3_1.json", "--element", "__import__('os')")[0] == 2


def test_precision_exhaustion_exit_code(tmp_path):
    # a zero constant term cannot be certified Eisenstein at any precision
    doc = {"base": {"p": 3, "precision": 8}, "steps": [{"kind": "eisenstein", "poly": [[0, 1], [3, 1], [1, 1]]}]}
    f = tmp_path / "t.json"
    f.write_text(json.dumps(doc))
    assert run("different", "--tower", f)[0] == 3


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults for this study\nprecision = 16\nthreshold = 1/8\n")
    tower = TOWERS / "cyclotomic3_1.json"
    doc = json.loads(run("different", "--tower", tower, "--config", cfg)[1])
    assert doc["config"]["precision"] == 16 and doc["config"]["threshold"] == [1, 8]
    doc = json.loads(run("different", "--tower", tower, "--config", cfg, "--precision", "12")[1])
    assert doc["config"]["precision"] == 12
    # the tower document's own precision applies when nothing overrides it
    doc = json.loads(run("different", "--tower", TOWERS / "laurent2_as.json")[1])
    assert doc["config"]["precision"] == 24
    cfg.write_text("colour = blue\n")
    assert run("different", "--tower", tower, "--config", cfg)[0] == 2


def test_config_file_supplies_paths(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"problem = {PROBLEMS / 'indep.json'}\noutput = csv\n")
    code, out, _ = run("defect", "--config", cfg)
    assert code == 0 and "Independent" in out and out.startswith("# ")


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "ramify.cli", "vg", "--group", "Q"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["dr_condition"] is True


# -- io helpers --------------------------------------------------------------------------------------


def test_parse_helpers():
    assert parse_rational([3, 6]) == parse_rational("1/2")
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("1,3") == [1, 3]
    with pytest.raises(ValidationError):
        parse_range("4..1")
    with pytest.raises(ValidationError):
        parse_rational([1, 0])


def test_tower_documents_round_trip():
    from ramify.io import tower_to_json

    for f in sorted(TOWERS.glob("*.json")):
        T = load_tower(json.loads(f.read_text()))
        again = load_tower(tower_to_json(T))
        assert again.key == T.key


def test_expression_parsing():
    T = load_tower(json.loads((TOWERS / "q2_root4.json").read_text()))
    x = parse_element(T, "th2^2 - th1")
    assert x.is_zero()
    coeffs = parse_poly(T, "x^2 - th2")
    assert len(coeffs) == 3 and coeffs[0] == -T.gen()
    with pytest.raises(ValidationError):
        parse_element(T, "th9")
    with pytest.raises(ValidationError):
        parse_element(T, "th1 % 2")
