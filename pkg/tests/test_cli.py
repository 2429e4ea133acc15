"""Command-line interface, JSON schemas and exit codes."""

from __future__ import annotations

import json

import pytest

from bfcable import paper_objects as po
from bfcable.bordered_structures import Arrow, TypeAModule, TypeDStructure
from bfcable.cli import main
from bfcable.coeff_algebra import FreeComplex
from bfcable.schema import SchemaError, detect_kind, load_object


def run(capsys, *argv, catalog=None):
    code = main(list(argv), catalog)
    out = capsys.readouterr()
    return code, out.out, out.err


def value(out):
    return json.loads(out)["value"]


def test_mor_homology(capsys):
    code, out, _ = run(capsys, "compute", "mor-homology", "cfd-U", "cfd-J")
    assert code == 0 and value(out) == 10


def test_cable_tau(capsys, tmp_path):
    path = tmp_path / "tau.json"
    code, out, _ = run(capsys, "compute", "cable-tau", "--p", "3", "--eps2", "1", "--json", str(path))
    res = json.loads(out)
    assert code == 0 and res["value"] == 3
    assert res["witness"]["U^(tau-1) nonzero"] and res["witness"]["U^tau zero"]
    assert json.loads(path.read_text()) == res


def test_other_computations(capsys):
    assert value(run(capsys, "compute", "surgery-hat", "--n", "4")[1]) == 12
    assert value(run(capsys, "compute", "torsion-order", "cfk-cable-J:5")[1]) == 5
    assert value(run(capsys, "compute", "torsion-order", "cfk-J")[1]) == 1
    assert value(run(capsys, "compute", "tau-J")[1]) == 1
    ct = value(run(capsys, "compute", "correction-terms")[1])
    assert [ct[n]["V0"] for n in po.INVOLUTIONS] == ["0", "0", "0", "1"]
    dm = value(run(capsys, "compute", "disk-maps")[1])
    assert set(dm) == {"sigma", "iota_sigma"}
    assert value(run(capsys, "compute", "validate", "cfa-cable:4")[1]) == []
    assert value(run(capsys, "compute", "box-homology", "cfa-framed:2", "cfd-J")[1]) == 10


def test_usage_errors(capsys):
    assert run(capsys, "compute", "nonsense")[0] == 2
    assert run(capsys, "compute", "mor-homology", "cfd-U")[0] == 2
    assert run(capsys, "compute", "torsion-order", "nope")[0] == 2
    assert run(capsys, "compute", "torsion-order", "cfd-J")[0] == 2
    assert run(capsys, "verify", "--check", "no-such-check")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "export", "a", "b", "c")[0] == 2


def test_verify_single_check(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--check", "mor-dim", "--json", str(path))
    assert code == 0
    rep = json.loads(path.read_text())
    assert len(rep) == 1 and rep[0]["id"] == "mor-dim" and rep[0]["status"] == "pass"
    assert set(rep[0]) == {"id", "status", "expected", "computed", "provenance", "wall_time"}


def mutated_cfd_J():
    N = po.cfd_J()
    # y1_1 -r2-> a1 -r3-> y1_1 composes to r23
    arrows = tuple(N.delta) + (Arrow("y1_1", "r2", "a1"),)
    return TypeDStructure(N.generators, arrows)


def test_injected_mutant_fails_structure_check(capsys):
    cat = po.Catalog({"cfd-J": mutated_cfd_J()})
    code, out, _ = run(capsys, "verify", "--check", "cfd-structure", "--check", "mor-dim", catalog=cat)
    assert code == 1
    assert "FAIL  cfd-structure" in out


def test_export_import_round_trip(capsys, tmp_path):
    path = tmp_path / "cfdJ.json"
    assert run(capsys, "export", "cfd-J", str(path))[0] == 0
    assert TypeDStructure.from_dict(json.loads(path.read_text())) == po.cfd_J()
    code, out, _ = run(capsys, "import", str(path), "--check")
    assert code == 0 and json.loads(out)["violations"] == []

    path2 = tmp_path / "cable.json"
    assert run(capsys, "export", "--object", "cfk-cable-J:5", str(path2))[0] == 0
    data = json.loads(path2.read_text())
    assert len(data["generators"]) == sum(po.cable_census(5).values())
    assert load_object(data) == po.cfk_cable_J(5)

    path3 = tmp_path / "framed.json"
    assert run(capsys, "export", "cfa-framed:3", str(path3))[0] == 0
    assert run(capsys, "import", str(path3), "--check")[0] == 0


def test_import_rejects_bad_rho(capsys, tmp_path):
    data = po.cfd_J().to_dict()
    data["delta"][5]["rho"] = "r4"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "import", str(path))
    assert code == 2 and "$.delta[5].rho" in err


def test_import_check_flags_invalid_structure(capsys, tmp_path):
    path = tmp_path / "mut.json"
    path.write_text(json.dumps(mutated_cfd_J().to_dict()))
    assert run(capsys, "import", str(path), "--check")[0] == 1


def test_import_io_errors(capsys, tmp_path):
    assert run(capsys, "import", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "garbage.json"
    bad.write_text("{not json")
    assert run(capsys, "import", str(bad))[0] == 2


def test_schema_kinds():
    assert detect_kind(po.cfd_J().to_dict()) == "type-d"
    assert detect_kind(po.cfa_cable(2).to_dict()) == "type-a"
    assert detect_kind(po.cfk_J().to_dict()) == "complex"
    with pytest.raises(SchemaError):
        detect_kind({"foo": 1})
    with pytest.raises(SchemaError):
        detect_kind([1, 2])


def test_schema_round_trips():
    for obj in (po.cfk_J(), po.cfk_cable_J(3), po.cfa_cable(3, j_max=5), po.cfd_unknot()):
        back = load_object(json.loads(json.dumps(obj.to_dict())))
        assert type(back) is type(obj)
        if isinstance(obj, TypeAModule):
            assert back.table == obj.table
        else:
            assert back == obj


def test_schema_errors_have_paths():
    d = po.cfk_J().to_dict()
    d["differential"][0]["u_exp"] = -1
    with pytest.raises(SchemaError, match=r"\$\.differential\[0\]\.u_exp"):
        load_object(d)
    d = po.cfd_J().to_dict()
    d["delta"].append({"from": "x", "rho": "r1", "to": "ghost"})
    with pytest.raises(SchemaError):
        load_object(d)
    assert isinstance(load_object(po.cfk_J().to_dict()), FreeComplex)
