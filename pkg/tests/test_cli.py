from __future__ import annotations

import copy
import io
import json
import os

import pytest

from conftest import INSTANCE_DIR
from repdim.cli import (
    CERT_FORMAT,
    emit_report,
    input_hash,
    load_certificate,
    parse_instance,
    parse_instance_data,
    run_command,
    write_atomic,
)
from repdim.errors import SchemaError

KRON = str(INSTANCE_DIR / "kronecker.json")
AFFINE = str(INSTANCE_DIR / "affine-a3.json")
A3 = str(INSTANCE_DIR / "a3-dynkin.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def kron_data():
    with open(KRON) as fh:
        return json.load(fh)


@pytest.fixture(scope="module")
def certified(tmp_path_factory):
    path = tmp_path_factory.mktemp("cert") / "kron.json"
    code, out, _ = run("certify", KRON, "--samples", "20", "--seed", "7", "--out", str(path))
    return code, out, path


def test_parse_shipped_instances():
    for path in (KRON, AFFINE, A3):
        f = parse_instance(path)
        assert f.options["samples"] >= 1
    assert parse_instance(KRON).spec == [("1", 2), ("2", 2)]


def test_unknown_vertex_rejected():
    data = kron_data()
    data["quiver"]["arrows"][0]["target"] = "9"
    with pytest.raises(SchemaError) as exc:
        parse_instance_data(data)
    assert exc.value.field == "quiver.arrows[0].target"


def test_non_rational_field_rejected():
    data = kron_data()
    data["field"] = "real"
    with pytest.raises(SchemaError) as exc:
        parse_instance_data(data)
    assert exc.value.field == "field"


def test_rational_string_power_accepted():
    data = kron_data()
    data["tilting"]["summands"][0]["power"] = "4/2"
    assert parse_instance_data(data).spec[0] == ("1", 2)
    data["tilting"]["summands"][0]["power"] = "3/2"
    with pytest.raises(SchemaError):
        parse_instance_data(data)


def test_unknown_option_rejected():
    data = kron_data()
    data["options"]["colour"] = "blue"
    with pytest.raises(SchemaError):
        parse_instance_data(data)


def test_input_hash_ignores_key_order():
    data = kron_data()
    shuffled = json.loads(json.dumps(data, sort_keys=True))
    assert input_hash(data) == input_hash(shuffled)
    other = copy.deepcopy(data)
    other["options"]["seed"] = 8
    assert input_hash(other) != input_hash(data)


def test_schema_error_exit_code(tmp_path):
    data = kron_data()
    data["field"] = "real"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    code, _, err = run("validate", str(p))
    assert code == 2
    assert "field" in err


def test_malformed_json_exit_code(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run("validate", str(p))[0] == 2


def test_missing_file_exit_code(tmp_path):
    assert run("validate", str(tmp_path / "nope.json"))[0] == 2


def test_usage_error_exit_code():
    assert run("frobnicate", KRON)[0] == 2


def test_validate_kronecker():
    code, out, _ = run("validate", KRON)
    assert code == 0
    assert "slice power: 3" in out and "dim B: 4" in out


def test_validate_dynkin():
    code, out, _ = run("validate", A3)
    assert code == 1
    assert "DynkinQuiver" in out


def test_knit_rows():
    code, out, _ = run("knit", KRON, "--depth", "2")
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert len(rows) == 6
    assert {r[3] for r in rows} == {"(1, 2)", "(0, 1)", "(3, 4)", "(2, 3)", "(5, 6)", "(4, 5)"}


def test_certify_dynkin_fails():
    code, out, _ = run("certify", A3)
    assert code == 1
    assert "[DynkinQuiver]" in out


def test_certify_kronecker(certified):
    code, out, path = certified
    assert code == 0
    assert "verdict: success, rep.dim B = 3 certified" in out
    assert "gl.dim End_B(M): Finite(3)" in out
    assert path.exists()


def test_certificate_file_round_trip(certified):
    _, out, path = certified
    raw, cert = load_certificate(str(path))
    assert raw["format"] == CERT_FORMAT
    assert raw["input_sha256"] == input_hash(kron_data())
    assert cert.gl_dim["value"] == 3 and cert.verdict == "success"
    # the report is reproduced byte for byte from the stored certificate
    assert emit_report(cert) == out


def test_certify_tampered():
    code, out, _ = run("certify", KRON, "--samples", "2", "--tamper", "drop-injective")
    assert code == 1
    assert "[GenCogenFailure]" in out


def test_approx_test_command():
    code, out, _ = run("approx-test", KRON, "--samples", "4", "--seed", "7")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6 and lines[-1] == "all samples passed"


def test_write_atomic(tmp_path):
    p = tmp_path / "out.txt"
    write_atomic(str(p), "one\n")
    write_atomic(str(p), "two\n")
    assert p.read_text() == "two\n"
    assert os.listdir(tmp_path) == ["out.txt"]
