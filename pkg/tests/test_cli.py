import json
import subprocess
import sys

import pytest

from pachner import core, io
from pachner.cli import main

SPHERE2 = "1 2 3\n1 2 4\n1 3 4\n2 3 4\n"


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return status, out, err


@pytest.fixture
def sphere_file(tmp_path):
    path = tmp_path / "s2.txt"
    path.write_text(SPHERE2)
    return path


@pytest.fixture
def rp2_file(tmp_path, rp2):
    path = tmp_path / "rp2.txt"
    io.save(rp2, path)
    return path


def test_gen_sphere(capsys):
    status, out, _ = run(capsys, "gen", "--kind", "sphere", "--dim", 2)
    assert status == 0 and out == SPHERE2


def test_gen_to_file_and_cone(capsys, sphere_file, tmp_path):
    target = tmp_path / "cone.json"
    assert run(capsys, "gen", "--kind", "cone", "--input", sphere_file, "--out", target)[0] == 0
    assert io.load(target) == core.cone(core.sphere(2))
    assert json.loads(target.read_text())["dim"] == 3


def test_moves(capsys, sphere_file):
    status, out, _ = run(capsys, "moves", sphere_file)
    lines = out.splitlines()
    assert status == 0 and len(lines) == 4
    assert all(line.startswith("2 ") for line in lines)
    assert lines[0] == "2 1 2 3 | 5"
    assert run(capsys, "moves", sphere_file, "--kind", 1)[1] == ""


def test_apply_on_single_triangle(capsys, tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("1 2 3\n")
    status, out, _ = run(capsys, "apply", path, "--a", "1 2 3")
    assert status == 0 and out == "1 2 4\n1 3 4\n2 3 4\n"


def test_apply_flip(capsys, tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("1 2 3\n1 2 4\n")
    assert run(capsys, "apply", path, "--a", "1 2", "--b", "3 4")[1] == "1 3 4\n2 3 4\n"


def test_info_golden(capsys, sphere_file):
    status, out, _ = run(capsys, "info", sphere_file)
    assert status == 0
    assert out == (
        "dim: 2\n"
        "vertices: 4\n"
        "facets: 4\n"
        "f-vector: 4 6 4\n"
        "euler: 2\n"
        "closed: yes\n"
        "boundary: none\n"
        "orientable: yes\n"
        "manifold: yes\n"
    )


def test_info_rp2(capsys, rp2_file):
    out = run(capsys, "info", rp2_file)[1]
    assert "f-vector: 6 15 10" in out and "euler: 1" in out and "orientable: no" in out


def test_info_ball(capsys, tmp_path):
    path = tmp_path / "ball.txt"
    path.write_text("1 2 3\n2 3 4\n")
    out = run(capsys, "info", path)[1]
    assert "boundary: 4 facets" in out and "orientable: n/a" in out


def test_walk_then_verify(capsys, sphere_file, tmp_path):
    trace, end = tmp_path / "w.trace", tmp_path / "end.txt"
    status, _, _ = run(capsys, "walk", sphere_file, "--steps", 40, "--budget", 10, "--seed", 3, "--trace", trace, "--out", end)
    assert status == 0
    status, out, _ = run(capsys, "verify", sphere_file, "--trace", trace, "--expect", end)
    assert status == 0 and "result: exact-match" in out
    status, out, _ = run(capsys, "verify", sphere_file, "--trace", trace)
    assert status == 0 and "result: exact-match" in out


def test_walk_is_reproducible(capsys, sphere_file, tmp_path):
    outputs = []
    for name in ("a", "b"):
        run(capsys, "walk", sphere_file, "--steps", 20, "--seed", 9, "--trace", tmp_path / name)
        outputs.append((tmp_path / name).read_bytes())
    assert outputs[0] == outputs[1]


def test_verify_reports_divergence(capsys, sphere_file, tmp_path):
    trace = tmp_path / "bad.trace"
    trace.write_text("2 1 2 3 | 5\n1 1 2 | 3 4\n")
    status, out, err = run(capsys, "verify", sphere_file, "--trace", trace)
    assert status == 4
    assert err.startswith("ERROR TraceDivergence:") and "step 2" in err
    assert len(err.splitlines()) == 1


def test_simplify(capsys, sphere_file, tmp_path):
    walked = tmp_path / "walked.txt"
    run(capsys, "walk", sphere_file, "--steps", 15, "--budget", 9, "--seed", 1, "--out", walked)
    report = tmp_path / "r.json"
    status, out, _ = run(capsys, "simplify", walked, "--seed", 2, "--report", report)
    assert status == 0 and out.startswith("verdict: REDUCED")
    data = json.loads(report.read_text())
    assert data["verdict"] == "REDUCED" and "elapsed" not in data


def test_simplify_unknown(capsys, rp2_file):
    status, out, _ = run(capsys, "simplify", rp2_file, "--seed", 0, "--max-steps", 50, "--restarts", 1)
    assert status == 5 and out.startswith("verdict: UNKNOWN")


def test_flipgraph(capsys, sphere_file, tmp_path):
    status, out, _ = run(capsys, "flipgraph", sphere_file, "--budget", 7, "--out", tmp_path / "g")
    assert status == 0
    assert "nodes: 9" in out and "connected: yes" in out
    assert "classes by vertex count: 4:1 5:1 6:2 7:5" in out
    assert (tmp_path / "g" / "graph.txt").exists()


def test_shell_listing(capsys, tmp_path):
    path = tmp_path / "b.txt"
    path.write_text("1 2 3 4\n2 3 4 5\n")
    status, out, _ = run(capsys, "shell", path)
    lines = out.splitlines()
    assert status == 0 and len(lines) == 2
    assert all(line.endswith("witness: verified") for line in lines)
    assert "boundary-move: 0 5 | 2 3 4" in lines[1]


def test_shell_to_facet(capsys, tmp_path):
    path = tmp_path / "cone.txt"
    io.save(core.cone(core.sphere(2)), path)
    trace = tmp_path / "s.trace"
    status, out, _ = run(capsys, "shell", path, "--to-facet", "--seed", 0, "--trace", trace)
    assert status == 0 and out.startswith("verdict: SHELLED")
    assert run(capsys, "verify", path, "--trace", trace)[0] == 0


@pytest.mark.parametrize(
    "argv, status, code",
    [
        (["frobnicate"], 2, "UsageError"),
        (["walk", "x.txt", "--steps", "3"], 2, "UsageError"),
        (["gen", "--kind", "sphere"], 2, "UsageError"),
        (["info", "missing.txt"], 3, "FormatError"),
    ],
)
def test_error_lines(capsys, argv, status, code):
    got, out, err = run(capsys, *argv)
    assert got == status
    assert err.startswith(f"ERROR {code}:") and len(err.splitlines()) == 1


def test_input_errors(capsys, tmp_path):
    mixed = tmp_path / "m.txt"
    mixed.write_text("1 2 3\n1 2\n")
    status, _, err = run(capsys, "info", mixed)
    assert status == 3 and err.startswith("ERROR MixedDimensions:")


def test_inadmissible(capsys, sphere_file):
    status, _, err = run(capsys, "apply", sphere_file, "--a", "1 2", "--b", "3 4")
    assert status == 4 and err.startswith("ERROR InadmissibleMove:")


def test_module_entry_point(sphere_file):
    proc = subprocess.run(
        [sys.executable, "-m", "pachner", "moves", str(sphere_file), "--kind", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 4
