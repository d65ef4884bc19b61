import json

import pytest

from chekanov.cli import EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN, main
from chekanov.freealg import LAURENT, Z2
from chekanov.reference import M10_139_WITNESS, parse_table, reference_dga


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dga_z2_matches_table(capsys):
    code, out, _ = run(capsys, "dga", "--knot", "m10_161", "--ring", "z2")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 40
    assert parse_table(out, Z2) == reference_dga("m10_161").diff


def test_dga_laurent_matches_table(capsys):
    code, out, _ = run(capsys, "dga", "--knot", "m10_139", "--ring", "laurent")
    assert code == EXIT_OK
    assert parse_table(out, LAURENT) == reference_dga("m10_139").diff


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "--knot", "unknot")
    assert code == EXIT_OK
    assert "tb = -1  r = 0" in out


def test_d2check(capsys):
    code, out, _ = run(capsys, "d2check", "--knot", "m10_139", "--ring", "laurent")
    assert code == EXIT_OK
    assert "45/45" in out


def test_witness_verify(capsys):
    code, out, _ = run(capsys, "witness", "verify", "--knot", "m10_139", "--ring", "laurent",
                       "--element", M10_139_WITNESS)
    assert code == EXIT_OK
    assert "verified" in out
    code, _, _ = run(capsys, "witness", "verify", "--knot", "m10_161", "--element", "x_2")
    assert code == EXIT_NEGATIVE


def test_witness_search_codes(capsys):
    assert run(capsys, "witness", "search", "--knot", "m10_139")[0] == EXIT_OK
    code, out, _ = run(capsys, "witness", "search", "--knot", "m10_161")
    assert code == EXIT_UNKNOWN
    assert "Unknown-at-cap" in out


def test_certify_m10_161(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "certify", "--knot", "m10_161", "--report", str(report))
    assert code == EXIT_OK
    data = json.loads(report.read_text())
    assert data["verdict"] == "NontrivialCertified"
    assert data["certificate"]["type"] == "representation"


def test_certify_m10_139_is_trivial(capsys):
    code, out, _ = run(capsys, "certify", "--knot", "m10_139")
    assert code == EXIT_NEGATIVE
    assert "Trivial" in out


def test_charalg_quotient(capsys):
    code, out, _ = run(capsys, "charalg", "--knot", "m10_161", "--quotient", "--table")
    assert code == EXIT_OK
    assert "forced zeros: x_1, x_3, x_4, x_7, x_9, x_14, x_16, x_25" in out
    assert "generators: x_2, x_11, x_12, x_13, x_27, x_29" in out


def test_knot_file(capsys, tmp_path):
    path = tmp_path / "trefoil.json"
    path.write_text(json.dumps({"name": "trefoil", "strands": 4, "word": [2, 2, 2], "notes": ""}))
    code, out, _ = run(capsys, "invariants", "--file", str(path))
    assert code == EXIT_OK
    assert "tb = 1" in out


@pytest.mark.parametrize("argv", [
    ["dga", "--knot", "nope"],
    ["dga", "--ring", "q"],
    ["bogus"],
    ["witness", "verify", "--element", "x_1 +"],
    ["dga", "--file", "/nonexistent.json"],
])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_INPUT


def test_suite_command(capsys):
    code, out, _ = run(capsys, "paper-suite")
    assert code == EXIT_OK
    assert out.count("[PASS]") == 10
