import json
from fractions import Fraction

import pytest

from conftest import F101, Q, X, mf
from nstepmf import document as doc
from nstepmf.cli import main
from nstepmf.mf import identity
from nstepmf.rootstack import cyclic_module

x = X()


def write(path, obj):
    path.write_text(doc.serialize(doc.make_document(obj)))
    return str(path)


def test_roundtrip_factorization():
    text = doc.serialize(doc.make_document(mf(2, [1, 1])))
    d = doc.parse(text)
    assert d.payload == mf(2, [1, 1])
    assert doc.serialize(d) == text


def test_roundtrip_other_kinds():
    for obj in (identity(mf(3, [2, 1])), cyclic_module(3, 1), mf(2, [1, 1], F101)):
        text = doc.serialize(doc.make_document(obj))
        assert doc.parse(text).payload == obj
    rep = doc.Document(Q, "report", {"a": 1})
    assert doc.parse(doc.serialize(rep)).payload == {"a": 1}


def test_rational_coefficients():
    M = mf(2, [[[x.scale(Fraction(1, 2))]], [[x.scale(2)]]])
    text = doc.serialize(doc.make_document(M))
    assert '"1/2"' in text
    assert doc.parse(text).payload == M


def test_trailing_zeros_canonicalized():
    data = json.loads(doc.serialize(doc.make_document(mf(2, [1, 1]))))
    data["payload"]["maps"][0][0][0] = [0, 1, 0, 0]
    d = doc.from_json(data)
    assert d.payload.maps[0][0, 0] == x
    assert doc.serialize(d) == doc.serialize(doc.make_document(mf(2, [1, 1])))


def test_semantic_errors():
    data = json.loads(doc.serialize(doc.make_document(mf(2, [1, 1]))))
    bad = dict(data, field={"Fp": 100})
    with pytest.raises(doc.DocumentError, match="not prime"):
        doc.from_json(bad)
    bad = json.loads(json.dumps(data))
    bad["payload"]["ranks"] = [2, 1]
    with pytest.raises(doc.DocumentError, match="matrix"):
        doc.from_json(bad)
    with pytest.raises(doc.DocumentError, match="format_version"):
        doc.from_json(dict(data, format_version=2))


def test_syntax_error_position():
    with pytest.raises(doc.DocumentSyntaxError) as info:
        doc.parse('{\n  "a": 1,\n}')
    assert info.value.line == 3


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_verify(tmp_path, capsys):
    good = write(tmp_path / "good.json", mf(2, [1, 1]))
    bad = write(tmp_path / "bad.json", mf(2, [1, 0]))
    code, out, _ = run(capsys, "verify", good)
    assert code == 0 and doc.parse(out).payload["ok"]
    code, out, _ = run(capsys, "verify", bad)
    assert code == 1
    assert doc.parse(out).payload["failing_start"] == 0


def test_cli_usage_errors(tmp_path, capsys):
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert run(capsys, "verify", str(tmp_path / "junk.json"))[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    assert run(capsys, "census", "--n", "5", "--k", "5")[0] == 2


def test_cli_rootstack(capsys):
    code, out, _ = run(capsys, "rootstack-check", "--n", "3")
    data = doc.parse(out).payload
    assert code == 0 and data["ok"]
    assert data["ext1_table"] == [[0, 1, 0], [0, 0, 1], [1, 0, 0]]


def test_cli_outputs_reparse(tmp_path, capsys):
    M = write(tmp_path / "m.json", mf(3, [2, 1]))
    f = write(tmp_path / "f.json", identity(mf(3, [2, 1])))
    for argv in (["twist", M, "--power", "2"], ["shift", M], ["cone", f]):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        d = doc.parse(out)
        assert d.kind == "factorization"
        from nstepmf.mf import verify_mf
        assert verify_mf(d.payload).ok
    code, out, _ = run(capsys, "shom", M, "--witnesses")
    shom = doc.parse(out).payload
    code2, out2, _ = run(capsys, "oracle-shom", M)
    assert code == code2 == 0
    assert shom["dimension"] == doc.parse(out2).payload["dimension"] == len(shom["witnesses"])
    code, out, _ = run(capsys, "stablyzero", f)
    assert code == 0 and doc.parse(out).payload["stably_zero"] is False


def test_cli_out_flag_and_field(tmp_path, capsys):
    target = tmp_path / "r.json"
    assert run(capsys, "random", "--n", "3", "--k", "2", "--seed", "5", "--field", "F101", "--out", str(target))[0] == 0
    d = doc.load(str(target))
    assert d.field == F101
    assert run(capsys, "verify", str(target), "--field", "Q")[0] == 2


def test_cli_max_degree_guard(tmp_path, capsys):
    M = write(tmp_path / "m.json", mf(3, [2, 1]))
    assert run(capsys, "shom", M, "--max-degree", "1")[0] == 1
