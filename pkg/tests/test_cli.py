import json
import subprocess
import sys

import pytest

from support import build_instance
from vscover import load_solution, save_instance, save_solution
from vscover.cli import main


@pytest.fixture()
def instance_file(tmp_path):
    inst = build_instance(4, [[0, 1], [2], [2, 3], [0]], [0, 0, 1, 1], [1, 1])
    path = tmp_path / "inst.json"
    path.write_bytes(save_instance(inst))
    return path


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_outputs_solution_json(capsys, instance_file, tmp_path):
    trace_path = tmp_path / "trace.jsonl"
    code, out, _ = run_cli(capsys, "solve", instance_file, "--trace", trace_path)
    assert code == 0
    doc = json.loads(out)
    assert doc["rounds"] == 1 and doc["picked"] == [0, 2]
    lines = trace_path.read_text().strip().splitlines()
    assert json.loads(lines[0])["n_l"] == 0


def test_exact_outputs_opt_and_witness(capsys, instance_file):
    code, out, _ = run_cli(capsys, "exact", instance_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["opt"] == 1
    assert sorted(doc["witness"]) == [0, 2]


def test_exact_unknown_exit_code(capsys, tmp_path):
    inst = build_instance(4, [[0, 1], [2, 3], [0, 2]], [0, 0, 1], [1, 1])
    path = tmp_path / "hard.json"
    path.write_bytes(save_instance(inst))
    code, _, err = run_cli(capsys, "exact", path, "--max-nodes", 1)
    assert code == 3
    assert "gave up" in err


def test_exact_size_cap_is_validation_error(capsys, instance_file):
    code, _, _ = run_cli(capsys, "exact", instance_file, "--max-sets", 2)
    assert code == 2


def test_baseline_report(capsys, instance_file):
    code, out, _ = run_cli(capsys, "baseline", instance_file)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"baseline_objective", "vsc_objective", "vsc_rounds", "opt"}
    assert doc["opt"] == 1


def test_gen_is_reproducible(capsys):
    args = ["gen", "--kind", "random", "--seed", "9", "--n", "12", "--k", "6",
            "--m", "2", "--s-max", "4"]
    code, out1, _ = run_cli(capsys, *args)
    assert code == 0
    code, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    doc = json.loads(out1)
    assert len(doc["sets"]) == 6


def test_gen_traceroute(capsys):
    code, out, _ = run_cli(
        capsys, "gen", "--kind", "traceroute", "--seed", "4", "--nodes", "15",
        "--m", "2", "--dests", "3", "--p", "0.3",
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["agents"]) == 2


def test_gen_invalid_spec_exit_2(capsys):
    code, _, err = run_cli(capsys, "gen", "--kind", "random", "--seed", "1",
                           "--n", "5", "--k", "2", "--m", "3", "--s-max", "2")
    assert code == 2
    assert "m=3" in err


def test_verify_good_and_tampered(capsys, instance_file, tmp_path):
    code, out, _ = run_cli(capsys, "solve", instance_file)
    sol = load_solution(out)
    good = tmp_path / "sol.json"
    good.write_bytes(save_solution(sol))
    code, out, _ = run_cli(capsys, "verify", instance_file, good)
    assert code == 0
    assert json.loads(out)["ok"] is True

    tampered = tmp_path / "bad.json"
    doc = json.loads(save_solution(sol))
    doc["objective"] += 1
    tampered.write_text(json.dumps(doc))
    code, out, err = run_cli(capsys, "verify", instance_file, tampered)
    assert code == 2
    report = json.loads(out)
    assert report["ok"] is False
    assert any(c["name"] == "objective" and not c["passed"] for c in report["checks"])
    assert "objective" in err


def test_verify_missing_cover_names_element(capsys, tmp_path):
    inst = build_instance(2, [[0], [1]], [0, 0], [1])
    ipath = tmp_path / "i.json"
    ipath.write_bytes(save_instance(inst))
    spath = tmp_path / "s.json"
    spath.write_text(json.dumps({
        "rounds": 1, "objective": 1, "picked": [0],
        "schedule": [[{"agent": 0, "sets": [0]}]],
    }))
    code, out, _ = run_cli(capsys, "verify", ipath, spath)
    assert code == 2
    report = json.loads(out)
    cover = [c for c in report["checks"] if c["name"] == "cover"][0]
    assert "element 1" in cover["detail"]


def test_bench_csv_and_summary(capsys, tmp_path):
    csv_path = tmp_path / "out.csv"
    code, out, _ = run_cli(
        capsys, "bench", "--corpus-seeds", "0..99", "--kind", "random",
        "--n", "12", "--k", "6", "--m", "2", "--s-max", "4", "--csv", csv_path,
    )
    assert code == 0
    summary = json.loads(out)
    assert summary == {"instances": 100, "hard_violations": 0, "paper_findings": 0}
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "seed,n,k,m,rounds,objective,opt,ln_bound,safe_bound,lemma_ok,claim_ok"
    assert len(lines) == 101
    assert lines[1].split(",")[0] == "0"
    assert lines[-1].split(",")[0] == "99"


def test_bench_bad_seed_range(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "bench", "--corpus-seeds", "5..1", "--kind",
                         "random", "--n", "10", "--k", "5", "--m", "1",
                         "--s-max", "3", "--csv", tmp_path / "x.csv")
    assert code == 2


def test_check_taylor(capsys):
    code, out, _ = run_cli(capsys, "check-taylor", "--max", "1000")
    assert code == 0
    assert out.strip() == "true"


def test_usage_error_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_validation_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "sets": [[0]], "agents": [{"weight": 1, "sets": [0]}]}')
    code, _, err = run_cli(capsys, "solve", bad)
    assert code == 2
    assert "element 1" in err


def test_missing_file_exit_2(capsys):
    code, _, _ = run_cli(capsys, "solve", "/no/such/file.json")
    assert code == 2


def test_console_entry_point_subprocess(tmp_path):
    inst = build_instance(2, [[0, 1]], [0], [1])
    path = tmp_path / "i.json"
    path.write_bytes(save_instance(inst))
    proc = subprocess.run(
        [sys.executable, "-m", "vscover.cli", "solve", str(path)],
        capture_output=True, text=True, env={"PATH": "/usr/bin:/bin", "VSC_LOG": "quiet"},
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rounds"] == 1


def test_pure_python_env_var_subprocess(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-c", "import vscover; print(vscover.BACKEND)"],
        capture_output=True, text=True,
        env={"PATH": "/usr/bin:/bin", "VSC_PURE_PYTHON": "1"},
    )
    assert proc.stdout.strip() == "python"
