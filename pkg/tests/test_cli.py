import json
from pathlib import Path

import jsonschema
import pytest

from slopechar import charcheck, cli

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
SCHEMAS = ROOT / "schemas"

TYPICAL = str(FIXTURES / "typical.slope")
AB = str(FIXTURES / "ammann_beenker.slope")


def _schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def _run_json(argv, tmp_path, name):
    out = tmp_path / "out.json"
    rc = cli.main(argv + ["--json", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, _schema(name))
    return doc, out.read_text()


def test_info(tmp_path):
    doc, _ = _run_json(["info", TYPICAL], tmp_path, "info")
    assert doc["n"] == 4 and doc["d"] == 2
    assert doc["generic"] is True
    assert doc["plucker_residuals_zero"] is True
    assert set(doc["grassmann"]) == {"G12", "G13", "G14", "G23", "G24", "G34"}


def test_info_stdout(capsys):
    assert cli.main(["info", TYPICAL]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 4


def test_digitize(tmp_path, capsys):
    out = tmp_path / "patch.json"
    svg = tmp_path / "patch.svg"
    rc = cli.main(["digitize", AB, "--radius", "6",
                   "--json", str(out), "--svg", str(svg)])
    assert rc == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, _schema("patch"))
    assert doc["faces"]
    assert "<svg" in svg.read_text()
    assert "faces at radius 6" in capsys.readouterr().out


def test_coincidences(tmp_path):
    doc, _ = _run_json(["coincidences", TYPICAL], tmp_path, "coincidences")
    assert len(doc["types"]) == 4
    for t in doc["types"]:
        assert len(t["lattice"]) == 6
        assert len(t["realized"]) == len(t["lattice"])


def test_equations(tmp_path):
    doc, _ = _run_json(["equations", TYPICAL], tmp_path, "equations")
    assert len(doc["equations"]) == 8
    assert doc["variables"] == ["G12", "G13", "G14", "G23", "G24", "G34"]


def test_verdict(tmp_path, capsys):
    doc, _ = _run_json(["verdict", TYPICAL], tmp_path, "verdict")
    assert doc["status"] == "CharacterizedByCoincidences"
    assert capsys.readouterr().out.strip() == "CharacterizedByCoincidences"
    doc, _ = _run_json(["verdict", AB], tmp_path, "verdict")
    assert doc["status"] == "NotCharacterized"
    assert doc["witness"]["comparison_point"]["G13"] == "3/2"


def test_rpatterns_and_regions(tmp_path):
    doc, _ = _run_json(["rpatterns", AB, "--r", "0"], tmp_path, "rpatterns")
    assert doc["complete"] is True
    assert doc["patterns"]
    # feed one pattern back through the regions subcommand
    pat = tmp_path / "pattern.json"
    first = doc["patterns"][0]
    pat.write_text(json.dumps(
        {"edges": first["edges"],
         "vertices": [first["edges"][0]["vertex"]]}))
    reg = tmp_path / "region.json"
    rc = cli.main(["regions", AB, "--pattern", str(pat), "--out", str(reg)])
    assert rc == 0
    rdoc = json.loads(reg.read_text())
    jsonschema.validate(rdoc, _schema("region"))
    assert rdoc["halfspaces"]


def test_determinism(tmp_path):
    _, text1 = _run_json(["rpatterns", AB, "--r", "0"], tmp_path, "rpatterns")
    _, text2 = _run_json(["rpatterns", AB, "--r", "0"], tmp_path, "rpatterns")
    assert text1 == text2
    _, v1 = _run_json(["coincidences", TYPICAL], tmp_path, "coincidences")
    _, v2 = _run_json(["coincidences", TYPICAL], tmp_path, "coincidences")
    assert v1 == v2


def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.slope"
    bad.write_text("not a spec\n")
    assert cli.main(["info", str(bad)]) == cli.EXIT_PARSE
    assert "error:" in capsys.readouterr().err
    assert cli.main(["info", str(tmp_path / "missing.slope")]) == cli.EXIT_PARSE


def test_exit_code_singular_offset(tmp_path, capsys, typical_spec):
    from slopechar import specfile
    # an all-zero offset puts lattice points on the window boundary
    k = len(typical_spec.minpoly) - 1
    spec = specfile.SlopeSpec(
        typical_spec.minpoly, typical_spec.root_interval, typical_spec.n,
        typical_spec.d, typical_spec.generators,
        offset=tuple((0,) * k for _ in range(typical_spec.n - typical_spec.d)))
    path = tmp_path / "singular.slope"
    path.write_text(specfile.serialize(spec))
    assert cli.main(["digitize", str(path), "--radius", "4"]) == cli.EXIT_SINGULAR
    assert "singular offset" in capsys.readouterr().err


def test_exit_code_resource_limit(monkeypatch, capsys):
    def boom(*a, **k):
        raise charcheck.ResourceLimit("forced")
    monkeypatch.setattr(charcheck, "verdict", boom)
    assert cli.main(["verdict", TYPICAL]) == cli.EXIT_RESOURCE
    assert "resource limit" in capsys.readouterr().err
