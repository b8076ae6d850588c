"""Command-line front end: exit codes, JSON output, files written."""

import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from nkconf.cli import main, run
from nkconf.corpus import fixture_text

DIGON = """\
# two points on two common lines
config 4 2
a: A B
b: A B
c: C D
d: C D
"""


def nkconf(*args):
    return subprocess.run([sys.executable, "-m", "nkconf.cli", *args], capture_output=True, text=True)


@pytest.fixture
def tables(tmp_path):
    def write(*names):
        paths = []
        for n in names:
            p = tmp_path / f"{n}.txt"
            p.write_text(fixture_text(n))
            paths.append(str(p))
        return paths

    return write


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_validate_certified_exits_zero(tables):
    status, text = run(["validate", *tables("pappus", "fano")])
    assert status == 0
    assert [r["validation"]["certified"] for r in records(text)] == [True, True]


def test_validate_digon_exits_one_with_diagnostics(tmp_path):
    f = tmp_path / "digon.txt"
    f.write_text(DIGON)
    proc = nkconf("validate", str(f))
    assert proc.returncode == 1
    assert "digon: points A and B both lie on lines a and b" in proc.stderr
    assert json.loads(proc.stdout)["validation"]["certified"] is False


def test_missing_file_exits_one(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "nope.txt")]) == 1
    assert "nkconf: error:" in capsys.readouterr().err


def test_usage_error_exits_two():
    assert nkconf("frobnicate", "x").returncode == 2


def test_json_output_is_deterministic_and_written(tables, tmp_path, capsys):
    (path,) = tables("desargues")
    out = tmp_path / "auto.json"
    assert main(["autgroup", path, "--json", str(out)]) == 0
    printed = capsys.readouterr().out
    assert out.read_text() == printed
    assert run(["autgroup", path])[1] == printed
    rec = json.loads(printed)
    assert rec["automorphisms"]["order"] == 120 * 2  # Desargues is self-dual


def test_report_on_directory_concatenates_files(tables, tmp_path):
    tables("pappus", "fano")
    _, whole = run(["report", str(tmp_path)])
    parts = "".join(run(["report", str(tmp_path / f"{n}.txt")])[1] for n in ("fano", "pappus"))
    assert whole == parts
    fano, pappus = records(whole)
    assert fano["realization"]["status"] == "NOT_REALIZABLE"
    assert pappus["realization"]["status"] == "REALIZABLE"


def test_filter_on_examples(tables):
    _, text = run(["filter", *tables("example_novar", "example_onevar")])
    for rec in records(text):
        assert rec["filters"]["pappus"] and rec["filters"]["desargues"]


def test_find_sub(tables):
    _, text = run(["find-sub", *tables("pappus"), "--pattern", "pappus", "--limit", "5"])
    rec = json.loads(text)
    assert rec["count"] == 5 and rec["limited"]


def test_realize_novar(tables):
    _, text = run(["realize", *tables("example_novar")])
    r = json.loads(text)["realization"]
    assert r["status"] == "NOT_REALIZABLE" and r["variables"] == 0


def test_realize_with_bad_sequence_is_input_error(tables, capsys):
    (path,) = tables("example_novar")
    assert main(["realize", path, "--sequence", "ABCD - zz"]) == 1
    assert "nkconf: error:" in capsys.readouterr().err


def test_realize_writes_svg(tables, tmp_path):
    svg = tmp_path / "pappus.svg"
    _, text = run(["realize", *tables("pappus"), "--svg", str(svg)])
    assert json.loads(text)["svg"] == str(svg)
    assert ET.parse(svg).getroot().tag.endswith("svg")


def test_polarity_from_witness(tables):
    _, text = run(["polarity", *tables("pappus")])
    rec = json.loads(text)
    assert rec["cyclic_orders"] == "witness"
    assert any(row.get("tolerant") for row in rec["dualities"])


def test_cseq_checks_given_sequence(tables):
    seq = "ABCD - degikp - IK - b - FJ - aj - H - q - E - s - QR - cn - GNO - fhlmor - LMPS"
    _, text = run(["cseq", *tables("example_novar"), "--sequence", seq])
    rec = json.loads(text)
    assert rec["check"]["valid"] and rec["plan"]["free_count"] == 0


def test_fixtures_command():
    status, text = run(["fixtures"])
    assert status == 0 and "pappus" in text.split()
    assert run(["fixtures", "fano"])[1] == fixture_text("fano")
