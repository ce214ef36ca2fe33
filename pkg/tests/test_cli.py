"""Command-line behaviour: exit codes, determinism, JSON schema and the
fixture pipeline.  Runs in-process through main() with captured stdout."""

import json

import pytest

from dworklie import VecField, modular_vf, parse_ratfn, resolve_chart
from dworklie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_emit_exits_zero(capsys):
    code, out = run(capsys, "ra", "--n", "1")
    assert code == 0
    assert out.startswith("n = 1")
    assert "modular:" in out and "lowering:" in out


def test_even_dimension_emits_relation(capsys):
    code, out = run(capsys, "ra", "--n", "4")
    assert code == 0
    assert "relation: t8^2 = -36*t6 + 36*t1^6" in out


def test_output_is_deterministic(capsys):
    _, first = run(capsys, "ra", "--n", "2")
    _, second = run(capsys, "ra", "--n", "2")
    assert first == second


def test_usage_errors_exit_64(capsys):
    for argv in (["ra", "--n", "0"],
                 ["ra"],
                 ["ra", "--n", "2", "--cn", "one/two"],
                 ["cy3", "--n", "2"],
                 ["verify", "--n", "1", "--suite", "nope"],
                 ["nope"],
                 []):
        assert main(argv) == 64, argv
        capsys.readouterr()


def test_json_schema_and_roundtrip(capsys):
    code, out = run(capsys, "ra", "--n", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"n", "dim", "ambient_vars", "relation", "object",
                        "meta"}
    assert doc["n"] == 1 and doc["dim"] == 3
    assert doc["meta"] == {"c_mode": "matched", "rule_extrapolated": False}
    ch = resolve_chart(1)
    R, _ = modular_vf(1)
    comps = doc["object"]["modular"]["components"]
    rebuilt = VecField(ch.ring, {v: parse_ratfn(ch.ring, s)
                                 for v, s in comps.items()})
    assert rebuilt == R


def test_json_connection_roundtrip(capsys):
    code, out = run(capsys, "build", "--n", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    conn = doc["object"]["connection"]
    ch = resolve_chart(2)
    from dworklie import full_connection
    A = full_connection(ch)
    assert set(conn) == set(ch.coords)
    for v in ch.coords:
        M = A.get(v)
        for i, row in enumerate(conn[v], start=1):
            for j, s in enumerate(row, start=1):
                assert parse_ratfn(ch.ring, s) == M.get1(i, j)


def test_symbolic_constant_mode(capsys):
    code, out = run(capsys, "build", "--n", "1", "--cn", "symbolic",
                    "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["c_mode"] == "symbolic"


def test_explicit_constant_mode(capsys):
    code, out = run(capsys, "ra", "--n", "1", "--cn", "1/27")
    assert code == 0
    assert "(c = 1/27)" in out


def test_latex_output_mentions_partials(capsys):
    code, out = run(capsys, "ra", "--n", "1", "--format", "latex")
    assert code == 0
    assert "\\frac{\\partial}{\\partial t_{1}}" in out


def test_verify_all_suites_passes(capsys):
    code, out = run(capsys, "verify", "--n", "2", "--suite", "all")
    assert code == 0
    assert "0 failed" in out
    assert "FAIL" not in out


def test_verify_single_suite(capsys):
    code, out = run(capsys, "verify", "--n", "1", "--suite", "sl2")
    assert code == 0
    assert "sl2: defining bracket relations" in out


def test_verify_json_mode(capsys):
    code, out = run(capsys, "verify", "--n", "1", "--suite", "omega",
                    "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert all(c["ok"] for c in doc["object"]["checks"])


def test_fixture_write_and_verify_roundtrip(tmp_path, capsys):
    code, out = run(capsys, "fixtures", "--n", "2", "--fixtures",
                    str(tmp_path))
    assert code == 0
    data = json.loads((tmp_path / "n2.json").read_text())
    assert set(data) == {"modular", "weight", "lowering", "relation"}
    code, out = run(capsys, "verify", "--n", "2", "--suite", "omega",
                    "--fixtures", str(tmp_path))
    assert code == 0
    assert "matches fixture" in out


def test_fixture_env_fallback(tmp_path, capsys, monkeypatch):
    run(capsys, "fixtures", "--n", "1", "--fixtures", str(tmp_path))
    monkeypatch.setenv("DWORK_FIXTURES", str(tmp_path))
    code, out = run(capsys, "verify", "--n", "1", "--suite", "sl2")
    assert code == 0
    assert "lowering field matches fixture" in out


def test_verify_detects_corrupted_fixture(tmp_path, capsys):
    run(capsys, "fixtures", "--n", "1", "--fixtures", str(tmp_path))
    data = json.loads((tmp_path / "n1.json").read_text())
    data["lowering"] = {"t2": "2"}
    (tmp_path / "n1.json").write_text(json.dumps(data))
    code, out = run(capsys, "verify", "--n", "1", "--suite", "sl2",
                    "--fixtures", str(tmp_path))
    assert code == 1
    assert "FAIL" in out
    # the diff names both sides
    assert "expected" in out and "got" in out


def test_decompose_member_and_obstruction(capsys):
    code, out = run(capsys, "decompose", "--n", "3")
    assert code == 0
    assert "member: yes" in out
    code, out = run(capsys, "decompose", "--n", "4")
    assert code == 0
    assert "member: no" in out
    assert "entry (3,3)" in out


def test_cy3_dims_output(capsys):
    code, out = run(capsys, "cy3", "--h", "10")
    assert code == 0
    assert "frame size: 22" in out
    assert "algebra dim: 177" in out
    assert "moduli dim: 187" in out
