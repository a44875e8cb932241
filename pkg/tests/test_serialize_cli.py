import json

import pytest

from crossmod.algebras import check_crossed_algebra, kp_iso_witness, same_structure
from crossmod.cli import main
from crossmod.fields import QQ
from crossmod.fixtures import std_morphisms
from crossmod.formal_maps import Cap, Cup, Cyl, Disc, expression, annulus_labeling
from crossmod.groups import symmetric_group_3
from crossmod.serialize import (
    SerializationError,
    Workspace,
    dumps,
    from_doc,
    to_doc,
)


@pytest.fixture(scope="module")
def ws():
    return Workspace()


def test_group_roundtrip(ws, groups):
    doc = to_doc("group", groups["S3"], "S3")
    kind, name, obj = from_doc(doc, ws)
    assert kind == "group" and obj == groups["S3"]


def test_crossed_module_roundtrip(ws, cms):
    for cm in cms.values():
        doc = to_doc("crossed_module", cm)
        kind, _, obj = from_doc(doc, ws)
        assert obj.boundary.map == cm.boundary.map
        assert obj.act.table == cm.act.table


def test_morphism_roundtrip(ws):
    m = std_morphisms()["q.CM-A3S3"]
    kind, _, obj = from_doc(to_doc("morphism", m), ws)
    assert obj.f_base.map == m.f_base.map


def test_algebra_roundtrip(ws, algebras):
    for name in ("KC.CM-A3S3", "KP.CM-Id2", "QKG.CM-A3S3", "PUSH.CM-A3S3"):
        L = algebras[name]
        kind, _, obj = from_doc(to_doc("algebra", L), ws)
        assert same_structure(obj, L)
        assert check_crossed_algebra(obj).ok


def test_algebra_morphism_roundtrip(ws, cms):
    w = kp_iso_witness(cms["CM-A3S3"], QQ)
    kind, _, obj = from_doc(to_doc("algebra_morphism", w), ws)
    assert all(obj.blocks[p] == w.blocks[p] for p in w.source.P.elements())


def test_expression_roundtrip(ws, cms):
    cm = cms["CM-A3S3"]
    e = expression(cm, [1], [[Disc(1), Cyl(0, 1, 2)], [Cap(cm.d(1))]], [])
    kind, _, obj = from_doc(to_doc("expression", e), ws)
    assert obj.layers == e.layers and obj.source == e.source


def test_simplicial_roundtrip(ws, cms):
    m = annulus_labeling(cms["CM-A3S3"], 1, 4, 1)
    kind, _, obj = from_doc(to_doc("simplicial", m), ws)
    assert obj.edge_labels == m.edge_labels
    assert obj.tri_labels == m.tri_labels


def test_named_references_resolve(ws):
    doc = {"kind": "homomorphism", "name": "sign", "source": "S3", "target": "Z2",
           "map": [0, 1, 1, 1, 0, 0]}
    kind, name, obj = from_doc(doc, ws)
    assert obj.source == symmetric_group_3()


def test_malformed_documents(ws):
    with pytest.raises(SerializationError):
        from_doc({"no": "kind"}, ws)
    with pytest.raises(SerializationError):
        from_doc({"kind": "group", "names": ["e", "s"], "table": [[0, 1]]}, ws)
    with pytest.raises(SerializationError):
        from_doc({"kind": "algebra", "crossed_module": "CM-Id2", "field": "Q"}, ws)


# --- CLI --------------------------------------------------------------------

def test_cli_check_builtin_passes(capsys):
    assert main(["check", "crossed-module", "CM-A3S3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] is True


def test_cli_check_algebra_and_field_flag(capsys):
    assert main(["--field", "Fp:2", "check", "algebra", "KP.CM-A3S3"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_cli_check_mutated_file_fails(tmp_path, capsys, groups):
    s3 = groups["S3"]
    doc = to_doc("group", s3, "S3mut")
    doc["table"][1][2] = 0
    path = tmp_path / "bad_group.json"
    path.write_text(dumps(doc))
    assert main(["check", "group", str(path)]) == 1
    report = json.loads(capsys.readouterr().out)
    failing = [c for c in report["checks"] if not c["ok"]]
    assert failing and failing[0]["instance"]


def test_cli_check_malformed_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["check", "group", str(path)]) == 2
    path2 = tmp_path / "unknown.json"
    assert main(["check", "group", "NoSuchGroup"]) == 2


def test_cli_build_kc_roundtrips(tmp_path, capsys):
    out = tmp_path / "kc.json"
    assert main(["build", "kC", "CM-A3S3", "--out", str(out)]) == 0
    assert main(["check", "algebra", str(out)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is True


def test_cli_build_pushforward(tmp_path, capsys):
    out = tmp_path / "push.json"
    assert main(["build", "pushforward", "q.CM-A3S3", "KP.CM-A3S3",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["dims"] == {"0": 1, "1": 1}
    assert main(["check", "algebra", str(out)]) == 0


def test_cli_build_pushforward_ill_defined_fails(capsys):
    assert main(["build", "pushforward", "q.CM-Mod", "KC.CM-Mod"]) == 1
    assert "error" in json.loads(capsys.readouterr().out)


def test_cli_build_kp_iso(tmp_path, capsys):
    out = tmp_path / "iso.json"
    assert main(["build", "kp_iso", "CM-A3S3", "--out", str(out)]) == 0
    assert main(["check", "algebra-morphism", str(out)]) == 0


def test_cli_eval_disc(tmp_path, capsys, cms):
    cm = cms["CM-Id2"]
    e = expression(cm, [], [[Disc(1)]], [cm.d(1)])
    path = tmp_path / "disc.json"
    path.write_text(dumps(to_doc("expression", e)))
    assert main(["eval", "KP.CM-Id2", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["matrix"] == [["1"]]
    assert doc["source_dims"] == [] and doc["target_dims"] == [1]


def test_cli_eval_identity_expression(tmp_path, capsys, cms):
    cm = cms["CM-Mod"]
    e = expression(cm, [0], [], [0])
    path = tmp_path / "ident.json"
    path.write_text(dumps(to_doc("expression", e)))
    assert main(["eval", "KC.CM-Mod", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["matrix"] == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def test_cli_eval_closed_cup_cap(tmp_path, capsys, cms):
    cm = cms["CM-Id2"]
    e = expression(cm, [], [[Cup(1)], [Cap(1)]], [])
    path = tmp_path / "closed.json"
    path.write_text(dumps(to_doc("expression", e)))
    assert main(["eval", "KP.CM-Id2", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["matrix"] == [["1"]]


def test_cli_eval_typecheck_failure(tmp_path, capsys, cms):
    cm = cms["CM-A3S3"]
    e = expression(cm, [], [[Disc(1)], [Cap(cm.d(1))]], [])
    path = tmp_path / "bad.json"
    path.write_text(dumps(to_doc("expression", e)))
    assert main(["eval", "KP.CM-A3S3", str(path)]) == 1


def test_cli_output_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    main(["build", "kC", "CM-A3S3", "--out", str(out1)])
    main(["build", "kC", "CM-A3S3", "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_verify_suite(capsys):
    assert main(["verify", "interchange"]) == 0
    assert main(["verify", "nosuchsuite"]) == 2


def test_cli_verify_mutation_injection(capsys):
    assert main(["verify", "--mutate", "trace"]) == 1  # detected: suite fails
    assert main(["verify", "--mutate", "nosuch"]) == 2


def test_cli_fixtures_dir(tmp_path, capsys, groups):
    path = tmp_path / "mygroup.json"
    path.write_text(dumps(to_doc("group", groups["Z4"], "MyZ4")))
    assert main(["--fixtures-dir", str(tmp_path), "check", "group", "MyZ4"]) == 0


def test_cli_demo(capsys):
    assert main(["demo"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out


def test_cli_verify_empty_suite():
    assert main(["verify", "none"]) == 0


def test_cli_check_expression_typecheck_failure(tmp_path, cms):
    cm = cms["CM-A3S3"]
    e = expression(cm, [], [[Disc(1)], [Cap(cm.d(1))]], [])
    path = tmp_path / "expr.json"
    path.write_text(dumps(to_doc("expression", e)))
    assert main(["check", "expression", str(path)]) == 1


def test_cli_build_kc_total_dim(tmp_path):
    out = tmp_path / "kc.json"
    assert main(["build", "kC", "CM-A3S3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert sum(doc["dims"].values()) == 3
