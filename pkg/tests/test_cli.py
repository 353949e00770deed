"""CLI subcommands, exit codes, CSV and manifest emission."""

import json

import numpy as np
import pytest

import rowtopk.verify
from rowtopk import load_matrix, load_result
from rowtopk.cli import main


def run_cli(*argv):
    return main(list(argv))


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.rtkm", tmp_path / "b.rtkm"
    assert run_cli("gen", "--rows", "2", "--cols", "3", "--seed", "1", "--out", str(a)) == 0
    assert run_cli("gen", "--rows", "2", "--cols", "3", "--seed", "1", "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()
    manifest = json.loads((tmp_path / "a.rtkm.manifest.json").read_text())
    assert manifest["params"]["seed"] == 1
    assert manifest["command"] == "gen"


def test_gen_rejects_zero_rows(tmp_path):
    assert run_cli("gen", "--rows", "0", "--cols", "3", "--out", str(tmp_path / "x.rtkm")) == 1


def test_run_matches_hand_example(tmp_path, capsys):
    from rowtopk import save_matrix

    mpath = tmp_path / "m.rtkm"
    save_matrix(np.array([[3, 1, 2], [0, 5, 4]], np.float32), mpath)
    rpath = tmp_path / "r.rtkr"
    assert run_cli("run", "--matrix", str(mpath), "--k", "2", "--out", str(rpath)) == 0
    res = load_result(rpath)
    assert res.values.tolist() == [[3.0, 2.0], [5.0, 4.0]]
    assert res.indices.tolist() == [[0, 2], [1, 2]]


def test_run_reruns_byte_identical(tmp_path):
    mpath = tmp_path / "m.rtkm"
    run_cli("gen", "--rows", "64", "--cols", "16", "--seed", "4", "--out", str(mpath))
    r1, r2 = tmp_path / "r1.rtkr", tmp_path / "r2.rtkr"
    for r in (r1, r2):
        assert run_cli("run", "--matrix", str(mpath), "--k", "3", "--out", str(r)) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_run_k_out_of_range_names_bound(tmp_path, capsys):
    mpath = tmp_path / "m.rtkm"
    run_cli("gen", "--rows", "2", "--cols", "3", "--out", str(mpath))
    assert run_cli("run", "--matrix", str(mpath), "--k", "9", "--out", str(tmp_path / "r.rtkr")) == 1
    assert "[1, 3]" in capsys.readouterr().err


def test_run_missing_matrix_is_io_error(tmp_path):
    assert run_cli("run", "--matrix", str(tmp_path / "nope.rtkm"), "--k", "1", "--out", str(tmp_path / "r.rtkr")) == 3


def test_bad_flags_exit_one(capsys):
    assert run_cli("stats-exit", "--cols", "8", "--k", "not-a-list", "--trials", "10") == 1


def test_stats_exit_csv_shape(tmp_path):
    out = tmp_path / "exit.csv"
    assert run_cli(
        "stats-exit", "--cols", "32", "--k", "4,8", "--trials", "400",
        "--seed", "2", "--out", str(out),
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# rowtopk-csv v1 exit-stats"
    assert lines[1] == "iteration,cum_pct_k4,cum_pct_k8"
    assert lines[-1].startswith("mean,")
    # cumulative columns end at 100
    last_data = lines[-2].split(",")
    assert float(last_data[1]) == pytest.approx(100.0)
    assert (tmp_path / "exit.csv.manifest.json").exists()


def test_stats_exit_single_trial(tmp_path, capsys):
    assert run_cli("stats-exit", "--cols", "16", "--k", "2", "--trials", "1", "--seed", "3") == 0
    text = capsys.readouterr().out
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith(("#", "iteration", "mean"))]
    hits_100 = [r for r in rows if float(r.split(",")[1]) == 100.0]
    assert hits_100, text


def test_stats_earlystop_csv(tmp_path):
    out = tmp_path / "es.csv"
    assert run_cli(
        "stats-earlystop", "--cols", "16", "--k", "4,16", "--max-iter", "2,3",
        "--trials", "300", "--seed", "6", "--out", str(out),
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# rowtopk-csv v1 earlystop-stats"
    assert lines[1] == "k,max_iter,e1_pct,e2_pct,hit_pct,skipped"
    full = [ln for ln in lines if ln.startswith("16,")]
    for ln in full:  # k == M selects everything
        _, _, e1, e2, hit, skipped = ln.split(",")
        assert float(hit) == 100.0
        assert float(e1) == 0.0


def test_theory_csv_known_row(capsys):
    assert run_cli("theory", "--cols", "256", "--k", "64,128") == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "# rowtopk-csv v1 theory"
    row64 = next(ln for ln in out if ln.startswith("256,64,"))
    fields = row64.split(",")
    assert float(fields[5]) == pytest.approx(9.0817, abs=1e-3)
    row128 = next(ln for ln in out if ln.startswith("256,128,"))
    assert float(row128.split(",")[2]) == 0.0  # quadratic term vanishes


def test_theory_rejects_empty_grid():
    assert run_cli("theory", "--cols", "8", "--k", "8") == 1


def test_verify_passes_small_grid(capsys):
    assert run_cli("verify", "--cols", "1,2,7", "--trials", "300", "--seed", "12") == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_detects_injected_fault(monkeypatch, capsys):
    # corrupt one selected value; the gate must notice and name the case
    real = rowtopk.verify.batch_topk

    def corrupted(matrix, cfg):
        res = real(matrix, cfg)
        res.values[0, 0] += 1.0
        return res

    monkeypatch.setattr(rowtopk.verify, "batch_topk", corrupted)
    assert run_cli("verify", "--cols", "7", "--trials", "50", "--seed", "12") == 2
    out = capsys.readouterr().out
    assert "MISMATCH" in out and "row=0" in out


def test_verify_grid_includes_k_equals_m(capsys):
    assert run_cli("verify", "--cols", "2", "--k", "1,2", "--trials", "100", "--seed", "1") == 0


def test_bench_csv(tmp_path):
    out = tmp_path / "bench.csv"
    assert run_cli(
        "bench", "--rows", "256", "--cols", "32", "--k", "4",
        "--modes", "exact,sort", "--repeats", "3", "--out", str(out),
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# rowtopk-csv v1 bench"
    assert lines[1] == "N,M,k,mode,workers,median_ms,min_ms"
    assert len(lines) == 2 + 2  # one row per mode


def test_gen_run_roundtrip_matches_library(tmp_path):
    from rowtopk import BatchConfig, batch_topk

    mpath = tmp_path / "m.rtkm"
    run_cli("gen", "--rows", "32", "--cols", "8", "--seed", "5", "--out", str(mpath))
    rpath = tmp_path / "r.rtkr"
    run_cli("run", "--matrix", str(mpath), "--k", "2", "--out", str(rpath))
    res = load_result(rpath)
    lib = batch_topk(load_matrix(mpath), BatchConfig(k=2))
    assert np.array_equal(res.values, lib.values)
    assert np.array_equal(res.indices, lib.indices)
