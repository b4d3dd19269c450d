import csv
import subprocess
import sys

import pytest

from pcenter.cli import main

from conftest import T3_TEXT, synthetic_pmed_text


@pytest.fixture
def t3_file(tmp_path):
    path = tmp_path / "t3.txt"
    path.write_text(T3_TEXT)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_build_p1(capsys, t3_file, tmp_path):
    code, out, _ = run(capsys, "build", "--input", t3_file, "--formulation", "p1", "--bounds", "none", "--out", tmp_path / "m.lp")
    assert code == 0
    assert out == "variables=13 constraints=16\n"
    assert (tmp_path / "m.lp").read_text().startswith("\\ model p1")


def test_build_orlib(capsys, tmp_path):
    path = tmp_path / "pmed99.txt"
    path.write_text(synthetic_pmed_text(n=30, extra_edges=20, p=3))
    code, out, _ = run(capsys, "build", "--input", path, "--formulation", "cp2")
    assert code == 0 and out.startswith("variables=31 ")


def test_solve_two_step(capsys, t3_file, tmp_path):
    trace = tmp_path / "trace.csv"
    code, out, _ = run(capsys, "solve", "--input", t3_file, "--formulation", "cp2", "--algorithm", "two-step", "--trace", trace)
    assert code == 0
    assert out.splitlines() == ["radius=4", f"trace={trace}"]
    assert trace.read_text().splitlines()[0] == "iteration,lb,ub,n_clients,n_facilities,lp_value"


@pytest.mark.parametrize("formulation", ["p1", "p2", "p3", "cp1", "cp2"])
def test_solve_direct(capsys, t3_file, formulation):
    code, out, _ = run(capsys, "solve", "--input", t3_file, "--formulation", formulation)
    assert (code, out) == (0, "radius=4\n")


def test_solve_relax(capsys, t3_file):
    code, out, _ = run(capsys, "solve", "--input", t3_file, "--formulation", "p2", "--relax", "--bounds", "none")
    assert code == 0 and out == "lp=3\n"


def test_solve_with_highs_command(capsys, t3_file):
    from test_solver import FAKE_HIGHS

    code, out, _ = run(capsys, "solve", "--input", t3_file, "--solver-cmd", FAKE_HIGHS, "--solver-dialect", "highs")
    assert (code, out) == (0, "radius=4\n")


def test_parse_error_exit_1(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 3 1\n0 1\n1 0")
    code, _, err = run(capsys, "build", "--input", path)
    assert code == 1 and "row 1 has 2 of 3 expected entries" in err


@pytest.mark.parametrize(
    "extra",
    [
        ["--bounds", "5,2"],
        ["--bounds", "lots"],
        ["--formulation", "p9"],
        ["--relax", "--algorithm", "two-step"],
    ],
)
def test_flag_errors_exit_2(capsys, t3_file, extra):
    code, _, _ = run(capsys, "solve", "--input", t3_file, *extra)
    assert code == 2


def test_no_command_exit_2(capsys):
    assert run(capsys)[0] == 2


def test_missing_file_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "build", "--input", tmp_path / "nope.txt")
    assert code == 3 and "nope.txt" in err


def test_solver_failure_exit_4(capsys, t3_file):
    code, _, err = run(capsys, "solve", "--input", t3_file, "--solver-cmd", f"{sys.executable} -c 'import sys; sys.exit(5)'")
    assert code == 4 and "solver error" in err


def test_invalid_ub_exit_4(capsys, t3_file):
    code, _, _ = run(capsys, "solve", "--input", t3_file, "--bounds", "0,2")
    assert code == 4


def test_fixture_fallback_warns(capsys, caplog, t3_file):
    code, out, _ = run(capsys, "solve", "--input", t3_file, "--bounds", "fixture")
    assert code == 0 and out == "radius=4\n"
    assert "falling back to lb0ub0" in caplog.text


def test_bench(capsys, tmp_path):
    for number, seed in ((2, 1), (10, 2)):
        (tmp_path / f"pmed{number}.txt").write_text(synthetic_pmed_text(n=20, extra_edges=15, p=3, seed=seed))
    (tmp_path / "pmed3.txt").write_text("3 1 1\n1 2 2\n")
    report = tmp_path / "report.csv"
    code, out, _ = run(
        capsys, "bench", "--instances", tmp_path / "pmed*.txt", "--formulations", "p1,p2,cp1,cp2",
        "--bounds", "lb0ub0", "--out", report, "--jobs", "2",
    )
    assert code == 0
    assert out == f"rows=12 failed=4 report={report}\n"
    raw = report.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(raw.decode("utf-8").splitlines()))
    assert [r["instance"] for r in rows] == ["pmed2"] * 4 + ["pmed3"] * 4 + ["pmed10"] * 4
    assert [r["formulation"] for r in rows[:4]] == ["p1", "p2", "cp1", "cp2"]
    for name in ("pmed2", "pmed10"):
        radii = {r["radius"] for r in rows if r["instance"] == name}
        assert len(radii) == 1 and radii != {""}
    p2 = next(r for r in rows if r["instance"] == "pmed2" and r["formulation"] == "p2")
    c1 = next(r for r in rows if r["instance"] == "pmed2" and r["formulation"] == "cp1")
    assert float(p2["lp_bound"]) == pytest.approx(float(c1["lp_bound"]), abs=1e-6)
    assert all(r["status"] == "error" and "disconnected" in r["message"].lower() for r in rows if r["instance"] == "pmed3")


def test_bench_two_step(capsys, tmp_path):
    (tmp_path / "a.txt").write_text(T3_TEXT)
    report = tmp_path / "r.csv"
    code, out, _ = run(capsys, "bench", "--instances", tmp_path / "*.txt", "--formulations", "cp1,cp2", "--algorithm", "two-step", "--out", report)
    assert code == 0
    rows = list(csv.DictReader(report.read_text().splitlines()))
    assert [r["radius"] for r in rows] == ["4", "4"]


def test_bench_is_deterministic(capsys, tmp_path):
    (tmp_path / "a.txt").write_text(T3_TEXT)
    texts = []
    for k in range(2):
        report = tmp_path / f"r{k}.csv"
        run(capsys, "bench", "--instances", tmp_path / "*.txt", "--formulations", "p2,cp2", "--out", report)
        texts.append([row.split(",")[:9] for row in report.read_text().splitlines()])
    assert texts[0] == texts[1]


def test_bench_flag_errors(capsys, tmp_path):
    assert run(capsys, "bench", "--instances", tmp_path / "none*", "--out", tmp_path / "r.csv")[0] == 2
    (tmp_path / "a.txt").write_text(T3_TEXT)
    assert run(capsys, "bench", "--instances", tmp_path / "*.txt", "--formulations", "zz", "--out", tmp_path / "r.csv")[0] == 2


def test_module_entry_point(t3_file):
    proc = subprocess.run(
        [sys.executable, "-m", "pcenter", "build", "--input", str(t3_file), "--formulation", "cp1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "variables=6 constraints=11\n"
