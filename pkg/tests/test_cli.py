"""End-to-end CLI tests: config validation exit codes, artifact layout,
manifest hashing, byte-identical reruns, and the report command.

All invocations go through main(argv) in-process; stderr diagnostics are
parsed as the one-line JSON the contract promises.
"""

import hashlib
import json

import pytest

from hartree_lab.cli import EXIT_CONFIG, EXIT_IO, EXIT_NUMERICAL, EXIT_OK, canonical_json, main


def _write_cfg(tmp_path, name, cfg):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def _stderr_error(capsys):
    err = [ln for ln in capsys.readouterr().err.splitlines() if ln.strip()]
    return json.loads(err[-1])


@pytest.fixture()
def gamma_window_cfg(tmp_path):
    cfg = {
        "kind": "gamma_window",
        "params": {"n": 3, "s": 0, "alpha": "5/2", "b": "1/2"},
        "output_dir": str(tmp_path / "gw"),
    }
    return _write_cfg(tmp_path, "gw.json", cfg), tmp_path / "gw"


# ---------------------------------------------------------------------------
# happy paths and artifacts
# ---------------------------------------------------------------------------


def test_gamma_window_run_writes_artifacts(gamma_window_cfg, capsys):
    cfg_path, out = gamma_window_cfg
    assert main(["gamma_window", "--config", cfg_path]) == EXIT_OK
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["kernel_backend"] in ("numba", "numpy")
    recomputed = hashlib.sha256(canonical_json(manifest["config"]).encode()).hexdigest()
    assert manifest["config_hash"] == recomputed
    csv = (out / "results.csv").read_text().splitlines()
    assert csv[0] == "n,s,alpha,b,ok,p,window,failures"
    assert "(0, 63/169)" in csv[1] and "13/6" in csv[1]

    assert main(["report", str(out)]) == EXIT_OK
    text = capsys.readouterr().out
    assert "window: (0, 63/169)" in text and "ok: True" in text


def test_admissible_run_and_report(tmp_path, capsys):
    cfg = {
        "kind": "admissible",
        "params": {"inv_q": "1/2", "inv_r": "1/2", "gamma": "3/4", "s": "-1/4", "dim": 2},
        "output_dir": str(tmp_path / "adm"),
    }
    path = _write_cfg(tmp_path, "adm.json", cfg)
    assert main(["admissible", "--config", path]) == EXIT_OK
    results = json.loads((tmp_path / "adm" / "results.json").read_text())
    assert results["verdict"]["admissible"] is True
    main(["report", str(tmp_path / "adm")])
    assert "admissible: True" in capsys.readouterr().out


def test_evolve_run_writes_snapshots(tmp_path):
    cfg = {
        "kind": "evolve",
        "params": {"alpha": "1/2", "b": "1/4", "p": "2", "amplitude": 0.2, "store_every": 2},
        "grid": {"dim": 1, "N": 64, "L": 6.0},
        "time": {"T": 0.05, "dt": 0.01},
        "output_dir": str(tmp_path / "ev"),
    }
    path = _write_cfg(tmp_path, "ev.json", cfg)
    assert main(["evolve", "--config", path]) == EXIT_OK
    out = tmp_path / "ev"
    results = json.loads((out / "results.json").read_text())
    assert not results["blew_up"]
    assert results["mass_drift"] <= 1e-10
    snaps = sorted(out.glob("snapshot_*.bin"))
    assert len(snaps) == results["snapshots"]
    rows = (out / "results.csv").read_text().splitlines()
    assert rows[0] == "index,t,mass,energy" and len(rows) == 1 + results["snapshots"]


def test_picard_report_prints_contraction_gate(tmp_path, capsys):
    cfg = {
        "kind": "picard",
        "params": {"alpha": "1/2", "b": "1/4", "p": "2", "lambda": -1, "amplitude": 0.1},
        "grid": {"dim": 1, "N": 64, "L": 6.0},
        "time": {"T": 0.1, "dt": 0.0125},
        "output_dir": str(tmp_path / "pic"),
    }
    path = _write_cfg(tmp_path, "pic.json", cfg)
    assert main(["picard", "--config", path]) == EXIT_OK
    results = json.loads((tmp_path / "pic" / "results.json").read_text())
    assert results["converged"] and results["max_contraction_ratio"] <= 0.5
    main(["report", str(tmp_path / "pic")])
    assert "(<= 1/2: PASS)" in capsys.readouterr().out


def test_strichartz_scan_run(tmp_path, capsys):
    cfg = {
        "kind": "strichartz_scan",
        "params": {"gamma": "1/4", "s": "1/4", "count": 3, "n_samples": 5},
        "grid": {"dim": 1, "N": 128, "L": 10.0},
        "time": {"T": 0.5},
        "output_dir": str(tmp_path / "scan"),
    }
    path = _write_cfg(tmp_path, "scan.json", cfg)
    assert main(["strichartz_scan", "--config", path]) == EXIT_OK
    rows = (tmp_path / "scan" / "results.csv").read_text().splitlines()
    assert len(rows) == 4  # header + 3 pairs
    assert rows[1].startswith("0,1/2,")  # the q = inf endpoint comes first
    for row in rows[1:]:
        float(row.rsplit(",", 1)[1])  # ratio column parses as a number
    main(["report", str(tmp_path / "scan")])
    assert "pairs: 3" in capsys.readouterr().out


def test_sharpness_weight_run_and_report(tmp_path, capsys):
    cfg = {
        "kind": "sharpness_weight",
        "params": {"r": 2.0, "gamma": 1.0, "refinements": [128, 256]},
        "grid": {"dim": 2, "N": 128, "L": 8.0},
        "output_dir": str(tmp_path / "sw"),
    }
    path = _write_cfg(tmp_path, "sw.json", cfg)
    assert main(["sharpness_weight", "--config", path]) == EXIT_OK
    results = json.loads((tmp_path / "sw" / "results.json").read_text())
    assert results["divergence_expected"] is True
    assert len(results["growth_factors"]) == 1
    main(["report", str(tmp_path / "sw")])
    assert "growth_factors" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_unknown_top_level_key_is_config_error(tmp_path, capsys):
    path = _write_cfg(tmp_path, "bad.json", {"kind": "gamma_window", "paramz": {}})
    assert main(["gamma_window", "--config", path]) == EXIT_CONFIG
    err = _stderr_error(capsys)
    assert err["error"] == "validation" and "paramz" in err["message"]


def test_unknown_param_is_config_error(tmp_path, capsys):
    cfg = {"kind": "gamma_window", "params": {"n": 3, "s": 0, "alpha": "5/2", "b": "1/2", "extra": 1}}
    path = _write_cfg(tmp_path, "bad.json", cfg)
    assert main(["gamma_window", "--config", path]) == EXIT_CONFIG
    assert "extra" in _stderr_error(capsys)["message"]


def test_float_rational_is_config_error(tmp_path, capsys):
    cfg = {"kind": "gamma_window", "params": {"n": 3, "s": 0, "alpha": 2.5, "b": "1/2"}}
    path = _write_cfg(tmp_path, "bad.json", cfg)
    assert main(["gamma_window", "--config", path]) == EXIT_CONFIG
    assert "float" in _stderr_error(capsys)["message"]


def test_missing_required_param_is_config_error(tmp_path, capsys):
    cfg = {"kind": "gamma_window", "params": {"n": 3, "s": 0, "alpha": "5/2"}}
    path = _write_cfg(tmp_path, "bad.json", cfg)
    assert main(["gamma_window", "--config", path]) == EXIT_CONFIG
    assert "'b'" in _stderr_error(capsys)["message"]


def test_kind_subcommand_mismatch_is_config_error(gamma_window_cfg, capsys):
    cfg_path, _ = gamma_window_cfg
    assert main(["admissible", "--config", cfg_path]) == EXIT_CONFIG
    assert "does not match subcommand" in _stderr_error(capsys)["message"]


def test_invalid_json_is_config_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["gamma_window", "--config", str(path)]) == EXIT_CONFIG
    assert _stderr_error(capsys)["error"] == "validation"


def test_bad_ineq_check_name_is_config_error(tmp_path, capsys):
    cfg = {
        "kind": "ineq",
        "params": {"check": "bogus", "count": 2},
        "grid": {"dim": 1, "N": 128, "L": 10.0},
        "output_dir": str(tmp_path / "iq"),
    }
    path = _write_cfg(tmp_path, "iq.json", cfg)
    assert main(["ineq", "--config", path]) == EXIT_CONFIG
    assert "bogus" in _stderr_error(capsys)["message"]


def test_missing_config_file_is_io_error(tmp_path, capsys):
    assert main(["gamma_window", "--config", str(tmp_path / "nope.json")]) == EXIT_IO
    assert _stderr_error(capsys)["error"] == "io"


def test_report_on_empty_dir_is_io_error(tmp_path, capsys):
    assert main(["report", str(tmp_path)]) == EXIT_IO
    assert _stderr_error(capsys)["error"] == "io"


def test_divergent_picard_is_numerical_failure_with_artifacts(tmp_path, capsys):
    cfg = {
        "kind": "picard",
        "params": {"alpha": "1/2", "b": "1/4", "p": "2", "lambda": -1, "amplitude": 40.0, "max_iter": 8},
        "grid": {"dim": 1, "N": 64, "L": 6.0},
        "time": {"T": 2.0, "dt": 0.25},
        "output_dir": str(tmp_path / "div"),
    }
    path = _write_cfg(tmp_path, "div.json", cfg)
    with pytest.warns(RuntimeWarning):
        assert main(["picard", "--config", path]) == EXIT_NUMERICAL
    assert _stderr_error(capsys)["error"] == "numerical"
    # the partial trajectory is still written for post-mortem plotting
    assert (tmp_path / "div" / "results.csv").exists()
    assert (tmp_path / "div" / "manifest.json").exists()


# ---------------------------------------------------------------------------
# overrides and determinism
# ---------------------------------------------------------------------------


def _small_ineq_cfg(tmp_path, out_name, seed=0):
    return {
        "kind": "ineq",
        "params": {"check": "hardy", "count": 4, "gamma1": "1/4"},
        "grid": {"dim": 1, "N": 256, "L": 12.0},
        "seed": seed,
        "output_dir": str(tmp_path / out_name),
    }


def test_same_seed_runs_are_byte_identical(tmp_path):
    p1 = _write_cfg(tmp_path, "a.json", _small_ineq_cfg(tmp_path, "run_a"))
    p2 = _write_cfg(tmp_path, "b.json", _small_ineq_cfg(tmp_path, "run_b"))
    assert main(["ineq", "--config", p1]) == EXIT_OK
    assert main(["ineq", "--config", p2]) == EXIT_OK
    a = (tmp_path / "run_a" / "results.csv").read_bytes()
    b = (tmp_path / "run_b" / "results.csv").read_bytes()
    assert a == b


def test_seed_override_changes_results_and_hash(tmp_path):
    p1 = _write_cfg(tmp_path, "a.json", _small_ineq_cfg(tmp_path, "run_a"))
    assert main(["ineq", "--config", p1]) == EXIT_OK
    assert main(["ineq", "--config", p1, "--out", str(tmp_path / "run_c"), "--seed", "7"]) == EXIT_OK
    a = json.loads((tmp_path / "run_a" / "manifest.json").read_text())
    c = json.loads((tmp_path / "run_c" / "manifest.json").read_text())
    assert c["config"]["seed"] == 7 and a["config"]["seed"] == 0
    assert a["config_hash"] != c["config_hash"]
    assert (tmp_path / "run_a" / "results.csv").read_bytes() != (tmp_path / "run_c" / "results.csv").read_bytes()


def test_out_override_redirects_artifacts(gamma_window_cfg, tmp_path):
    cfg_path, default_out = gamma_window_cfg
    target = tmp_path / "elsewhere"
    assert main(["gamma_window", "--config", cfg_path, "--out", str(target)]) == EXIT_OK
    assert (target / "results.csv").exists()
    assert not default_out.exists()


def test_threads_flag_is_accepted(gamma_window_cfg):
    cfg_path, _ = gamma_window_cfg
    assert main(["gamma_window", "--config", cfg_path, "--threads", "2"]) == EXIT_OK
