import csv
import io
import json
import subprocess
import sys

import pytest

from denjoy.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_equivalent(capsys):
    code, out, _ = run(capsys, "classify", "[0; (2)]", "[0; 1, (2)]", "--bound", "1")
    assert code == 0 and "matrix: [[0, 1], [1, 1]]" in out


def test_classify_not_equivalent(capsys):
    code, out, _ = run(capsys, "--alpha", "[0; (2)]", "classify", "[0; (1)]")
    assert code == 1 and "not" in out.lower()


def test_classify_unknown(capsys):
    code, _, _ = run(capsys, "classify", "[0; 5, 1, 2, 1, 2, 1, 2]", "[0; 2, 1, 2, 1, 2, 1]", "--depth", "3")
    assert code == 2


@pytest.mark.parametrize("argv", [["classify", "[0; (2"], ["bogus"], ["verify", "--samples", "x"],
                                  ["genus", "denjoy(m=0)"], ["orbit", "--start", "nowhere"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "200", "--iters", "50")
    assert code == 0 and out.strip().endswith("overall: PASS")


def test_verify_depth_failure(capsys):
    code, out, _ = run(capsys, "verify", "--depth", "1", "--samples", "10", "--iters", "5")
    assert code == 1 and "resolved-depth" in out and "overall: FAIL" in out


def test_verify_deterministic(capsys):
    argv = ["--seed", "7", "verify", "--samples", "100", "--iters", "30"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[1]


def test_genus(capsys):
    code, out, _ = run(capsys, "genus", "power(denjoy(m=1), k=3)")
    data = json.loads(out)
    assert code == 0 and data["genus"] == 4 and data["orientable"] is True


def test_ends(capsys):
    code, out, _ = run(capsys, "ends", "--resolution", "3")
    assert code == 0 and json.loads(out) == {"count": 1, "resolution": 3}


def test_complex(capsys):
    code, out, _ = run(capsys, "complex", "--orbits", "3", "--k", "4")
    data = json.loads(out)
    assert (data["euler_characteristic"], data["free_rank"]) == (-3, 4)


def test_orbit_csv(capsys):
    code, out, _ = run(capsys, "orbit", "--start", "gap:0:0:1/2", "--steps", "3")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 5


def test_orbit_beyond_depth(capsys):
    assert run(capsys, "--depth", "2", "orbit", "--steps", "5")[0] == 1


def test_cantor_csv(capsys):
    code, out, _ = run(capsys, "cantor", "--depth", "2")
    assert code == 0 and len(out.strip().splitlines()) == 6


def test_plot_files(tmp_path, capsys):
    assert run(capsys, "--depth", "0", "plot", "--out", str(tmp_path))[0] == 0
    for name in ("denjoy.svg", "cantor.csv", "trajectory.csv"):
        assert (tmp_path / name).stat().st_size > 0
    svg = (tmp_path / "denjoy.svg").read_text()
    assert svg.startswith("<svg") or svg.startswith("<?xml")


def test_plot_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "plot", "--out", str(a))
    run(capsys, "plot", "--out", str(b))
    assert (a / "denjoy.svg").read_bytes() == (b / "denjoy.svg").read_bytes()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "denjoy.cli", "genus", "denjoy(m=2)"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["genus"] == 3
