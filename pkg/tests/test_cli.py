"""Command line behavior: output, exit codes, determinism."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from mdsgit.cli import main

BLP2 = {
    "fan": {
        "rays": [[1, 0], [0, 1], [-1, -1], [1, 1]],
        "max_cones": [[0, 3], [1, 3], [1, 2], [0, 2]],
    }
}
FLOP = {"weights": {"columns": [[1], [1], [-1], [-1]]}}


@pytest.fixture
def blp2_file(tmp_path):
    path = tmp_path / "blp2.json"
    path.write_text(json.dumps(BLP2))
    return str(path)


@pytest.fixture
def flop_file(tmp_path):
    path = tmp_path / "flop.json"
    path.write_text(json.dumps(FLOP))
    return str(path)


def test_chambers_output(blp2_file, capsys):
    assert main(["chambers", blp2_file]) == 0
    out = capsys.readouterr().out
    assert out == (
        "2 chambers, 1 walls, 2 boundary facets\n"
        "chamber 0: generators (0, 1) (1, 0)\n"
        "chamber 1: generators (1, -1) (1, 0)\n"
    )


def test_chambers_json(blp2_file, capsys):
    assert main(["chambers", blp2_file, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["count"] == 2
    assert data["chambers"][1]["generators"] == [[1, -1], [1, 0]]


def test_eff_and_mov(blp2_file, capsys):
    assert main(["eff", blp2_file]) == 0
    out = capsys.readouterr().out
    assert "generator (0, 1)" in out and "generator (1, -1)" in out
    assert main(["mov", blp2_file]) == 0
    out = capsys.readouterr().out
    assert "chambers inside: [1]" in out


def test_nef(blp2_file, capsys):
    assert main(["nef", blp2_file]) == 0
    out = capsys.readouterr().out
    assert out.startswith("nef chamber 1, picard number 2\n")


def test_nef_needs_fan(flop_file, capsys):
    assert main(["nef", flop_file]) == 2
    assert "needs fan input" in capsys.readouterr().err


def test_walls(blp2_file, capsys):
    assert main(["walls", blp2_file]) == 0
    out = capsys.readouterr().out
    assert "divisorial" in out and "contracted [3]" in out


def test_sqms(blp2_file, capsys):
    assert main(["sqms", blp2_file]) == 0
    assert "chambers with the same quotient rays: [1]" in capsys.readouterr().out


def test_boundary(blp2_file, capsys):
    assert main(["boundary", blp2_file]) == 0
    out = capsys.readouterr().out
    assert "quotient dim 0, fiber dim 2" in out
    assert "quotient dim 1, fiber dim 1" in out


def test_quotient(blp2_file, capsys):
    assert main(["quotient", blp2_file, "--chi", "2,-1"]) == 0
    out = capsys.readouterr().out
    assert "4 rays" in out and "picard number 2" in out
    assert main(["quotient", blp2_file, "--chi", "1,1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["picard_number"] == 1
    assert data["dropped_columns"] == [3]
    assert data["unstable_min_codim"] == 1


def test_quotient_exit_codes(blp2_file, capsys):
    assert main(["quotient", blp2_file, "--chi=-1,0"]) == 3  # outside
    assert main(["quotient", blp2_file, "--chi", "1,0"]) == 4  # on the wall
    assert main(["quotient", blp2_file, "--chi", "0,1"]) == 4  # on the boundary
    assert main(["quotient", blp2_file, "--chi", "1,2,3"]) == 2  # wrong length
    assert main(["quotient", blp2_file, "--chi", "a,b"]) == 2
    capsys.readouterr()


def test_factor(blp2_file, capsys):
    assert main(["factor", blp2_file, "--from", "2,-1", "--to", "1,1"]) == 0
    out = capsys.readouterr().out
    assert "t = 1/2: divisorial wall" in out


def test_factor_flop_json(flop_file, capsys):
    assert main(["factor", flop_file, "--from=-3", "--to", "5", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["chamber_path"] == [0, 1]
    assert data["crossing_times"] == ["3/8"]
    assert data["crossings"][0]["kind"] == "small"


def test_check_cover(blp2_file, capsys):
    assert main(["check-cover", blp2_file]) == 0
    assert "cover check: ok" in capsys.readouterr().out


def test_m0n(capsys):
    assert main(["m0n", "-n", "4"]) == 0
    out = capsys.readouterr().out
    assert "7 walls, 12 chambers (8 stable, 4 unstable)" in out
    assert "rho + e = 1 holds on all stable chambers: True" in out


def test_m0n_json(capsys):
    assert main(["m0n", "-n", "5", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["constant"] == 5 and data["ok"] is True
    assert data["chambers"] == 81 and data["stable"] == 76


def test_format_flag_aliases(blp2_file, capsys):
    assert main(["chambers", blp2_file, "--format", "json"]) == 0
    as_format = capsys.readouterr().out
    assert main(["chambers", blp2_file, "--json"]) == 0
    assert capsys.readouterr().out == as_format
    assert main(["m0n", "--n", "4", "--format", "text"]) == 0
    assert "12 chambers" in capsys.readouterr().out


def test_bad_input_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["chambers", str(bad)]) == 2
    assert main(["chambers", str(tmp_path / "missing.json")]) == 2
    empty = tmp_path / "empty.json"
    empty.write_text('{"nope": 1}')
    assert main(["chambers", str(empty)]) == 2
    capsys.readouterr()


def test_invalid_fan_input(tmp_path, capsys):
    bad_fan = tmp_path / "fan.json"
    bad_fan.write_text(json.dumps({
        "fan": {"rays": [[1, 0], [0, 1], [1, 1], [-1, 2]],
                "max_cones": [[0, 1], [2, 3]]}
    }))
    assert main(["chambers", str(bad_fan)]) == 3  # parses fine, fails validation
    assert "error" in capsys.readouterr().err


def test_cones_key_and_name(tmp_path, capsys):
    doc = {"name": "blowup", "fan": {
        "rays": BLP2["fan"]["rays"], "cones": BLP2["fan"]["max_cones"]}}
    path = tmp_path / "named.json"
    path.write_text(json.dumps(doc))
    assert main(["chambers", str(path), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["count"] == 2
    assert data["command"] == "chambers"
    assert data["input_name"] == "blowup"
    assert len(data["input_digest"]) == 64
    assert data["warnings"] == []


def test_factor_accepts_chamber_ids(blp2_file, capsys):
    assert main(["factor", blp2_file, "--from", "1", "--to", "0", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["chamber_path"] == [1, 0]
    assert data["crossings"][0]["kind"] == "divisorial"
    assert main(["factor", blp2_file, "--from", "9", "--to", "0"]) == 2
    assert "out of range" in capsys.readouterr().err


def test_torsion_warning(tmp_path, capsys):
    doc = {"fan": {"rays": [[1, 2], [1, 0], [-1, 0]],
                   "cones": [[0, 1], [0, 2]]}}
    path = tmp_path / "torsion.json"
    path.write_text(json.dumps(doc))
    assert main(["chambers", str(path)]) == 0
    assert "warning: grading group has torsion factors [2]" in capsys.readouterr().out
    assert main(["chambers", str(path), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["warnings"] == ["grading group has torsion factors [2]"]


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(FLOP)))
    assert main(["chambers", "-"]) == 0
    assert "2 chambers" in capsys.readouterr().out


def test_consecutive_runs_are_byte_identical(blp2_file):
    cmd = [sys.executable, "-m", "mdsgit.cli", "chambers", blp2_file, "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout
    assert first.stdout  # not vacuous
