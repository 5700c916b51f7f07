import json
import os
import subprocess
import sys

import pytest

from flagmaps.cli import main


@pytest.fixture
def cube_file(tmp_path):
    path = tmp_path / "cube.flags.json"
    assert main(["generate", "platonic", "cube", "-o", str(path)]) == 0
    return path


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_analyze_cube(capsys, cube_file):
    capsys.readouterr()
    code, rep = run_json(capsys, ["analyze", str(cube_file)])
    assert code == 0
    assert rep["genus"] == 0 and rep["symmetry"]["class"] == "Regular" and rep["aut_order"] == 48
    assert rep["schlafli"] == {"p": 4, "q": 3}
    assert all(rep["reflections"]["relations"].values())
    assert rep["rotations"]["orders"] == {"R": 4, "S": 3}
    assert len(rep["reflections"]["permutations"]["rho0"]) == 48


def test_analyze_text(capsys, cube_file):
    assert main(["analyze", str(cube_file)]) == 0
    out = capsys.readouterr().out
    assert "genus: 0" in out and "symmetry: Regular" in out and "|Aut|: 48" in out


def test_analyze_is_byte_identical(capsys, cube_file):
    capsys.readouterr()
    main(["analyze", str(cube_file), "--json"])
    first = capsys.readouterr().out
    main(["analyze", str(cube_file), "--json"])
    assert capsys.readouterr().out == first


def test_analyze_chiral(capsys, tmp_path):
    path = tmp_path / "t.flags.json"
    main(["generate", "torus44", "2", "1", "-o", str(path)])
    capsys.readouterr()
    code, rep = run_json(capsys, ["analyze", str(path)])
    assert rep["symmetry"] == {"class": "Chiral", "orbits": 2, "orbit_sizes": [20, 20], "diagnostic": None}
    assert rep["reflections"] is None and rep["aut_order"] == 20


def test_analyze_fragment(capsys, tmp_path):
    path = tmp_path / "u.flags.json"
    assert main(["generate", "universal", "4", "5", "--radius", "6", "-o", str(path)]) == 0
    capsys.readouterr()
    code, rep = run_json(capsys, ["analyze", str(path)])
    assert code == 0 and rep["fragment"] and rep["problems"] == []


def test_validation_failure_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.flags.json"
    bad.write_text('{"n": 2, "r0": [1, 1], "r1": [1, 0], "r2": [1, 0]}')
    assert main(["analyze", str(bad)]) == 2
    fixed = tmp_path / "fixed.flags.json"
    fixed.write_text('{"n": 2, "r0": [0, 1], "r1": [1, 0], "r2": [1, 0]}')
    assert main(["analyze", str(fixed)]) == 2
    assert "fixed point" in capsys.readouterr().out


def test_usage_errors(tmp_path):
    assert main([]) == 1
    assert main(["bogus"]) == 1
    assert main(["analyze", str(tmp_path / "missing.flags.json")]) == 1
    assert main(["cayley", "--coxeter", "3", "7", "--extra-relator", "xyz"]) == 1
    assert main(["ends", "--source", "nope:1", "--max-inner", "2", "--spread", "3"]) == 1
    assert main(["generate", "torus44", "1", "0", "-o", str(tmp_path / "t.json")]) == 2


def test_cayley_klein(capsys, tmp_path):
    dot = tmp_path / "k.dot"
    code = main(["cayley", "--coxeter", "3", "7", "--extra-relator", "abc^8", "--max-cosets", "100000",
                 "-o", str(dot)])
    assert code == 0
    assert "cosets: 336" in capsys.readouterr().out
    assert dot.read_text().startswith("digraph")


def test_cayley_overflow(capsys):
    code, rep = run_json(capsys, ["cayley", "--coxeter", "3", "7", "--max-cosets", "3000"])
    assert code == 3 and rep["status"] == "Overflow" and rep["cosets"] is None


def test_cayley_subgroup_and_adjacency(capsys, tmp_path):
    adj = tmp_path / "a.json"
    code = main(["cayley", "--coxeter", "4", "3", "--subgroup", "b,c", "--adjacency", str(adj)])
    assert code == 0 and "cosets: 8" in capsys.readouterr().out
    assert json.loads(adj.read_text())["vertices"] == 8


def test_ends_line(capsys):
    assert main(["ends", "--source", "zd:1", "--max-inner", "5", "--spread", "6"]) == 0
    assert "verdict: 2" in capsys.readouterr().out
    code, rep = run_json(capsys, ["ends", "--source", "tree:3", "--max-inner", "3", "--spread", "4"])
    assert [row["components"] for row in rep["rows"]] == [3, 6, 12]


def test_ends_cap():
    code = main(["ends", "--source", "zd:3", "--max-inner", "4", "--spread", "10", "--max-vertices", "500"])
    assert code == 3


def test_verify_commands(capsys, tmp_path, cube_file):
    torus = tmp_path / "t.flags.json"
    main(["generate", "torus44", "3", "1", "-o", str(torus)])
    assert main(["verify", "theorem1", str(torus)]) == 0
    assert main(["verify", "correspondence", str(torus)]) == 0
    assert main(["verify", "compare-ends", str(cube_file)]) == 0
    assert main(["verify", "compare-ends", "universal:4,4", "--max-inner", "2", "--spread", "4"]) == 0
    assert main(["verify", "translates", str(cube_file), "--count", "2"]) == 0
    assert main(["verify", "translates", str(cube_file), "--count", "2", "--seed",
                 ",".join(map(str, range(48)))]) == 4


def test_verify_failure_exit_code(tmp_path):
    from flagmaps import build_square_triangle, save

    path = tmp_path / "st.flags.json"
    save(build_square_triangle(), path)
    assert main(["verify", "theorem1", str(path)]) == 4


def test_export_dot(capsys, cube_file):
    capsys.readouterr()
    assert main(["export", str(cube_file), "--dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph flags {")
    assert out.count(" -- ") == 3 * 48 // 2


def test_module_entry_point(cube_file):
    proc = subprocess.run([sys.executable, "-m", "flagmaps", "analyze", str(cube_file), "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["aut_order"] == 48


def test_env_cap(tmp_path):
    env_run = subprocess.run(
        [sys.executable, "-m", "flagmaps", "generate", "universal", "4", "5", "--radius", "20",
         "-o", str(tmp_path / "x.json")],
        capture_output=True, text=True, env={**os.environ, "FLAGMAPS_CAP": "200"})
    assert env_run.returncode == 3
    assert "resource cap" in env_run.stderr
