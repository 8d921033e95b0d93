"""Command-line interface: schemas, exit codes, determinism, config merge.

Exit convention: 0 success, 2 usage, 3 file I/O, 4 numeric/decomposition.
Most tests drive main() in process; a few go through ``python3 -m`` to pin
the module entry point.
"""

import csv
import io
import json
import os
import subprocess
import sys
from contextlib import redirect_stdout

import numpy as np
import pytest

import hrgboot
from hrgboot.cli import SWEEP_COLUMNS, main

RUN_RECORD_KEYS = {
    "seed", "p", "rho", "r", "N", "alpha", "nu",
    "a0_size", "af_size", "rounds", "core_size", "l1", "config",
}

BANDS_DOC_KEYS = {
    "N", "alpha", "nu", "R", "epsilon", "lambda", "C", "t", "T", "T1",
    "T2_observed", "theta_i", "B_i", "K_i", "census", "census_remainder",
    "S_i", "Theta_i", "L_i", "blocks_total", "kappa", "qualified_total",
    "error_sums", "flags", "config",
}


def run_main(argv):
    """main() with captured stdout; returns (exit code, text)."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        rc = main(argv)
    return rc, buf.getvalue()


def run_json(argv):
    rc, text = run_main(argv)
    assert rc == 0
    return json.loads(text)


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("cli")


@pytest.fixture(scope="module")
def graph_file(workdir):
    path = workdir / "sparse.json"
    rc, out = run_main([
        "generate", "--n", "400", "--alpha", "0.7", "--nu", "1.0",
        "--seed", "5", "--out", str(path),
    ])
    assert rc == 0 and "wrote" in out
    return path


@pytest.fixture(scope="module")
def census_file(workdir, census_graph):
    path = workdir / "census.json"
    hrgboot.save_graph(census_graph, path)
    return path


class TestGenerate:
    def test_writes_loadable_graph(self, graph_file):
        g = hrgboot.load_graph(graph_file)
        assert g.n == 400
        assert g.params.alpha == 0.7 and g.params.seed == 5

    def test_identical_invocations_write_identical_bytes(self, workdir, graph_file):
        twin = workdir / "sparse-twin.json"
        rc, _ = run_main([
            "generate", "--n", "400", "--alpha", "0.7", "--nu", "1.0",
            "--seed", "5", "--out", str(twin),
        ])
        assert rc == 0
        assert twin.read_bytes() == graph_file.read_bytes()

    def test_rejects_nonpositive_n(self, workdir):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--n", "0", "--alpha", "0.7", "--nu", "1.0",
                  "--seed", "1", "--out", str(workdir / "x.json")])
        assert exc.value.code == 2

    def test_rejects_unknown_mode(self, workdir):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--n", "10", "--alpha", "0.7", "--nu", "1.0",
                  "--seed", "1", "--mode", "guess", "--out", str(workdir / "x.json")])
        assert exc.value.code == 2

    def test_out_is_required(self):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--n", "10", "--alpha", "0.7", "--nu", "1.0",
                  "--seed", "1"])
        assert exc.value.code == 2


class TestRun:
    def test_full_seeding_infects_everything_in_zero_rounds(self, graph_file):
        doc = run_json(["run", "--graph", str(graph_file), "--p", "1.0"])
        assert set(doc) == RUN_RECORD_KEYS
        assert doc["a0_size"] == 400 and doc["af_size"] == 400
        assert doc["rounds"] == 0

    def test_empty_seeding_stays_empty(self, graph_file):
        doc = run_json(["run", "--graph", str(graph_file), "--p", "0.0"])
        assert doc["a0_size"] == 0 and doc["af_size"] == 0

    def test_seed_defaults_to_graph_seed(self, graph_file):
        doc = run_json(["run", "--graph", str(graph_file), "--p", "0.5"])
        assert doc["seed"] == 5
        doc = run_json(["run", "--graph", str(graph_file), "--p", "0.5",
                        "--seed", "9"])
        assert doc["seed"] == 9

    def test_multiplier_converts_to_probability(self, graph_file):
        doc = run_json(["run", "--graph", str(graph_file), "--p-mult", "2.0"])
        expected = min(1.0, 2.0 * 400 ** (-1.0 / 1.4))
        assert doc["p"] == pytest.approx(expected, rel=1e-12)
        assert doc["config"]["p"] == doc["p"]

    def test_p_and_multiplier_are_exclusive(self, graph_file):
        for extra in ([], ["--p", "0.5", "--p-mult", "1.0"]):
            with pytest.raises(SystemExit) as exc:
                main(["run", "--graph", str(graph_file)] + extra)
            assert exc.value.code == 2

    def test_missing_graph_is_io_error(self, workdir):
        rc, _ = run_main(["run", "--graph", str(workdir / "absent.json"),
                          "--p", "0.5"])
        assert rc == 3

    def test_unwritable_output_is_io_error(self, graph_file):
        rc, _ = run_main(["run", "--graph", str(graph_file), "--p", "0.5",
                          "--out", "/nonexistent-dir/out.json"])
        assert rc == 3

    def test_output_file_round_trips(self, graph_file, workdir):
        out = workdir / "record.json"
        rc, _ = run_main(["run", "--graph", str(graph_file), "--p", "0.5",
                          "--out", str(out)])
        assert rc == 0
        doc = json.loads(out.read_text())
        assert set(doc) == RUN_RECORD_KEYS
        assert 0 <= doc["af_size"] <= 400

    def test_identical_runs_are_identical(self, graph_file):
        a = run_json(["run", "--graph", str(graph_file), "--p", "0.3"])
        b = run_json(["run", "--graph", str(graph_file), "--p", "0.3"])
        assert a == b


def read_sweep(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    return header, rows


def strip_wall(header, rows):
    i = header.index("wall_time_ms")
    return [row[:i] + row[i + 1:] for row in rows]


SWEEP_ARGS = [
    "sweep", "--n", "250,350", "--alpha", "0.7", "--nu", "1.0",
    "--rho", "1.0", "--r", "2", "--p-mult", "1.0", "--seeds", "2",
    "--seed", "17",
]


class TestSweep:
    def test_csv_shape_and_grid(self, workdir):
        out = workdir / "sweep.csv"
        rc, _ = run_main(SWEEP_ARGS + ["--out", str(out)])
        assert rc == 0
        header, rows = read_sweep(out)
        assert header == SWEEP_COLUMNS
        assert len(rows) == 4  # 2 sizes x 1 multiplier x 2 seeds
        ncol = header.index("N")
        assert sorted({r[ncol] for r in rows}) == ["250", "350"]
        for row in rows:
            frac = float(row[header.index("af_fraction")])
            assert 0.0 <= frac <= 1.0
        seeds = {r[header.index("seed")] for r in rows}
        assert len(seeds) == 4  # every (cell, replicate) gets its own seed

    def test_rows_deterministic_up_to_wall_time(self, workdir):
        a, b = workdir / "sweep-a.csv", workdir / "sweep-b.csv"
        assert run_main(SWEEP_ARGS + ["--out", str(a)])[0] == 0
        assert run_main(SWEEP_ARGS + ["--out", str(b)])[0] == 0
        ha, ra = read_sweep(a)
        hb, rb = read_sweep(b)
        assert ha == hb
        assert strip_wall(ha, ra) == strip_wall(hb, rb)

    def test_worker_count_does_not_change_rows(self, workdir):
        a, b = workdir / "sweep-w1.csv", workdir / "sweep-w2.csv"
        assert run_main(SWEEP_ARGS + ["--workers", "1", "--out", str(a)])[0] == 0
        assert run_main(SWEEP_ARGS + ["--workers", "2", "--out", str(b)])[0] == 0
        ha, ra = read_sweep(a)
        hb, rb = read_sweep(b)
        assert strip_wall(ha, ra) == strip_wall(hb, rb)

    def test_config_sidecar(self, workdir):
        out = workdir / "sweep-side.csv"
        assert run_main(SWEEP_ARGS + ["--workers", "1", "--out", str(out)])[0] == 0
        side = json.loads((workdir / "sweep-side.csv.config.json").read_text())
        assert side["n"] == [250, 350]
        assert side["seeds"] == 2 and side["workers"] == 1
        assert side["p_mult"] == [1.0]

    def test_json_format(self, workdir):
        out = workdir / "sweep.jsonl"
        rc, _ = run_main(SWEEP_ARGS + ["--format", "json", "--out", str(out)])
        assert rc == 0
        rows = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(rows) == 4
        assert all(set(SWEEP_COLUMNS) == set(r) for r in rows)

    def test_worker_env_override(self, workdir, monkeypatch):
        out = workdir / "sweep-env.csv"
        monkeypatch.setenv("HRGBOOT_WORKERS", "2")
        assert run_main(SWEEP_ARGS + ["--out", str(out)])[0] == 0
        side = json.loads((workdir / "sweep-env.csv.config.json").read_text())
        assert side["workers"] == 2

    def test_bad_worker_env_is_numeric_error(self, workdir, monkeypatch):
        monkeypatch.setenv("HRGBOOT_WORKERS", "abc")
        rc, _ = run_main(SWEEP_ARGS + ["--out", str(workdir / "sweep-bad.csv")])
        assert rc == 4


class TestStats:
    def test_summary_with_automatic_floor(self, graph_file):
        doc = run_json(["stats", "--graph", str(graph_file)])
        assert doc["N"] == 400
        assert doc["band_census_error"] is None
        census = doc["band_census"]
        assert census["T"] == 0
        assert census["counts"][0] + census["remainder"] == 400
        assert census["bounds_hi"] == [None]
        assert census["in_bounds"] == [True]
        assert doc["config"]["big_c"] == "auto"

    def test_sparse_model_reports_decomposition_failure(self, graph_file):
        doc = run_json(["stats", "--graph", str(graph_file), "--big-c", "3.5"])
        assert doc["band_census"] is None
        assert "does not decrease" in doc["band_census_error"]

    def test_census_regime_has_levels(self, census_file):
        doc = run_json(["stats", "--graph", str(census_file), "--big-c", "4.0"])
        census = doc["band_census"]
        assert census["T"] == 1
        assert all(census["in_bounds"])

    def test_complete_graph_file_is_fully_clustered(self, workdir):
        n = 5
        params = hrgboot.ModelParams(N=n, alpha=0.7, nu=1.0, seed=0)
        rng = np.random.default_rng(0)
        edges = np.array([(i, j) for i in range(n) for j in range(i + 1, n)])
        g = hrgboot.Graph(params, rng.uniform(0, 1, n), np.sort(rng.uniform(0, 1, n)), edges)
        path = workdir / "complete.json"
        hrgboot.save_graph(g, path)
        doc = run_json(["stats", "--graph", str(path)])
        assert doc["mean_clustering"] == pytest.approx(1.0)
        assert doc["l1"] == n

    def test_edgeless_graph_file_summary(self, workdir):
        n = 5
        params = hrgboot.ModelParams(N=n, alpha=0.7, nu=1.0, seed=0)
        rng = np.random.default_rng(0)
        g = hrgboot.Graph(
            params, rng.uniform(0, 1, n), np.sort(rng.uniform(0, 1, n)),
            np.empty((0, 2), dtype=np.int64),
        )
        path = workdir / "edgeless.json"
        hrgboot.save_graph(g, path)
        doc = run_json(["stats", "--graph", str(path)])
        assert doc["mean_clustering"] == 0.0
        assert doc["l1"] == 1

    def test_bad_epsilon_is_usage_error(self, graph_file):
        with pytest.raises(SystemExit) as exc:
            main(["stats", "--graph", str(graph_file), "--epsilon", "1.5"])
        assert exc.value.code == 2


class TestBands:
    def test_document_schema(self, census_file):
        doc = run_json(["bands", "--graph", str(census_file), "--big-c", "4.0"])
        assert set(doc) == BANDS_DOC_KEYS
        assert doc["T"] == 1 and doc["T1"] == 1
        assert len(doc["t"]) == 2
        assert len(doc["theta_i"]) == len(doc["B_i"]) == len(doc["K_i"]) == 1
        assert len(doc["S_i"]) == len(doc["Theta_i"]) == len(doc["L_i"]) == 1
        rows = doc["census"]
        assert [r["band"] for r in rows] == [0]
        assert rows[0]["hi"] is None  # band 0 has no ceiling
        assert rows[0]["in_bounds"] is True
        assert rows[0]["count"] + doc["census_remainder"] == 20_000
        assert rows[0]["qualified"] == rows[0]["count"]
        assert doc["flags"]["census_in_bounds"] is True
        assert doc["config"]["big_c"] == 4.0

    def test_automatic_floor_gives_trivial_chain(self, census_file):
        doc = run_json(["bands", "--graph", str(census_file)])
        assert doc["config"]["big_c"] == pytest.approx(30.42642553551394)
        assert doc["T"] == 0
        assert doc["error_sums"] == {
            "angular_ratio": 0.0, "retention": 0.0, "concentration": 0.0,
        }
        assert all(doc["flags"].values())

    def test_sparse_model_is_numeric_error(self, graph_file):
        rc, _ = run_main(["bands", "--graph", str(graph_file), "--big-c", "3.5"])
        assert rc == 4

    def test_percolation_seed_is_recorded(self, census_file):
        doc = run_json(["bands", "--graph", str(census_file), "--big-c", "4.0",
                        "--seed", "21"])
        assert doc["config"]["seed"] == 21


class TestConfigFile:
    def test_config_supplies_defaults(self, workdir):
        cfg = workdir / "gen.json"
        out = workdir / "from-config.json"
        cfg.write_text(json.dumps({
            "n": 250, "alpha": 0.75, "nu": 1.0, "seed": 3, "out": str(out),
        }))
        rc, _ = run_main(["generate", "--config", str(cfg)])
        assert rc == 0
        assert hrgboot.load_graph(out).n == 250

    def test_flags_override_config(self, workdir):
        cfg = workdir / "gen2.json"
        out = workdir / "overridden.json"
        cfg.write_text(json.dumps({
            "n": 250, "alpha": 0.75, "nu": 1.0, "seed": 3, "out": str(out),
        }))
        rc, _ = run_main(["generate", "--config", str(cfg), "--n", "300"])
        assert rc == 0
        assert hrgboot.load_graph(out).n == 300

    def test_unknown_config_key_is_usage_error(self, workdir):
        cfg = workdir / "bad-key.json"
        cfg.write_text(json.dumps({"n": 10, "bogus": 1}))
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--config", str(cfg)])
        assert exc.value.code == 2

    def test_invalid_config_values_are_usage_errors(self, workdir):
        cfg = workdir / "bad-val.json"
        cfg.write_text(json.dumps({"n": "many"}))
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--config", str(cfg)])
        assert exc.value.code == 2

    def test_malformed_or_missing_config_is_usage_error(self, workdir):
        broken = workdir / "broken.json"
        broken.write_text("{not json")
        for path in (broken, workdir / "absent-config.json"):
            with pytest.raises(SystemExit) as exc:
                main(["generate", "--config", str(path)])
            assert exc.value.code == 2


class TestModuleEntryPoint:
    def test_missing_subcommand_is_usage_error(self):
        proc = subprocess.run(
            [sys.executable, "-m", "hrgboot.cli"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 2

    def test_generate_then_run_pipeline(self, tmp_path):
        gpath = tmp_path / "g.json"
        proc = subprocess.run(
            [sys.executable, "-m", "hrgboot.cli", "generate", "--n", "200",
             "--alpha", "0.7", "--nu", "1.0", "--seed", "1",
             "--out", str(gpath)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        proc = subprocess.run(
            [sys.executable, "-m", "hrgboot.cli", "run", "--graph",
             str(gpath), "--p", "0.5"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(proc.stdout)
        assert set(doc) == RUN_RECORD_KEYS

    def test_missing_file_exit_code(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "hrgboot.cli", "run", "--graph",
             str(tmp_path / "none.json"), "--p", "0.5"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 3
        assert "error:" in proc.stderr
