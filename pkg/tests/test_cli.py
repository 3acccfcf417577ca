"""End-to-end checks of the command-line driver via main(argv)."""

import json

import pytest

from twistforms.cli import main, parse_range, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("0..4") == [0, 1, 2, 3, 4]
    assert parse_range("-2..1") == [-2, -1, 0, 1]
    assert parse_range("all", 1, 3) == [1, 2, 3]
    with pytest.raises(UsageError):
        parse_range("all")
    with pytest.raises(UsageError):
        parse_range("2..1")
    with pytest.raises(UsageError):
        parse_range("x")


def test_bott_table(capsys):
    code, out, _ = run(capsys, "bott", "--n", "2", "--p", "1", "--d", "2")
    assert code == 0
    assert "h0(p=1)" in out
    assert "3" in out


def test_bott_negative_range_and_json(capsys):
    code, out, _ = run(
        capsys, "bott", "--n", "2", "--p", "1", "--d", "-2..2", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    by_d = {entry["d"]: entry["dims"] for entry in doc}
    assert by_d[-2] == [0, 0, 3]
    assert by_d[2] == [3, 0, 0]


def test_h0_agreement(capsys):
    code, out, _ = run(capsys, "h0", "--n", "2", "--d", "0..3", "--format", "csv")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    for row in rows:
        assert row[2] == row[3], row


def test_verify_display_pass(capsys):
    code, out, _ = run(capsys, "verify-display", "--n", "2", "--t", "0..2")
    assert code == 0
    assert "FAILED" not in out
    assert "n=2 p=0 t=0" in out


def test_verify_display_fault_injection(capsys):
    code, out, _ = run(
        capsys, "verify-display", "--n", "2", "--p", "0", "--t", "0", "--inject-fault"
    )
    assert code == 1
    assert "FAILED" in out


def test_maxrank_witnessed_and_not(capsys, tmp_path):
    cert_file = tmp_path / "cert.json"
    code, out, _ = run(
        capsys,
        "maxrank", "--n", "2", "--p", "0", "--d", "2", "--s", "4",
        "--out", str(cert_file),
    )
    assert code == 0
    assert "maximal" in out
    doc = json.loads(cert_file.read_text())
    assert doc["problem"] == {"n": 2, "p": 0, "d": 2, "s": 4}
    assert doc["field"] == {"kind": "prime", "modulus": 101}
    assert doc["shape"] == [8, 8]
    assert doc["maximal"] is True

    code, out, _ = run(capsys, "maxrank", "--verify", str(cert_file))
    assert code == 0
    assert "verified" in out


def test_maxrank_certificate_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(
            capsys,
            "maxrank", "--n", "2", "--p", "1", "--d", "2", "--s", "2",
            "--seed", "5", "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_maxrank_rational_field(capsys):
    code, out, _ = run(
        capsys,
        "maxrank", "--n", "2", "--p", "0", "--d", "2", "--s", "4", "--q", "rational",
    )
    assert code == 0
    assert "maximal" in out


def test_maxrank_missing_args_is_usage_error(capsys):
    code, _, err = run(capsys, "maxrank", "--n", "2", "--p", "0", "--d", "2")
    assert code == 1
    assert "required" in err


def test_maxrank_field_too_small(capsys):
    code, _, err = run(
        capsys, "maxrank", "--n", "1", "--p", "0", "--d", "2", "--s", "200"
    )
    assert code == 1
    assert "error" in err


def test_horace_run(capsys):
    code, out, _ = run(
        capsys, "horace", "--n", "2", "--p", "0", "--d", "2", "--s", "4"
    )
    assert code == 0
    assert "[+] root" in out
    assert "implication failures" not in out


def test_horace_json_to_file(capsys, tmp_path):
    path = tmp_path / "tree.json"
    code, _, _ = run(
        capsys,
        "horace", "--n", "2", "--p", "0", "--d", "2", "--s", "3",
        "--format", "json", "--out", str(path),
    )
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["problem"]["s"] == 3
    assert doc["implication_failures"] == []


def test_horace_bad_base(capsys):
    code, _, err = run(
        capsys, "horace", "--n", "2", "--p", "0", "--d", "1", "--s", "2", "--base", "3"
    )
    assert code == 1
    assert "error" in err


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 1


def test_bott_out_file(capsys, tmp_path):
    path = tmp_path / "dims.csv"
    code, out, _ = run(
        capsys,
        "bott", "--n", "3", "--p", "0", "--d", "0..2", "--format", "csv",
        "--out", str(path),
    )
    assert code == 0
    assert out == ""
    lines = path.read_text().strip().splitlines()
    assert lines[0].startswith("d,")
    assert len(lines) == 4
