"""Experiment runner: validated JSON configs in, reproducible artifacts out.

Every run writes to its output directory:

* ``manifest.json`` -- the validated config echoed back, a sha256 content
  hash of that echo, the package version, and the active kernel backend;
* ``results.json``  -- structured results;
* ``results.csv``   -- flat rows for plotting, byte-identical across runs
  with the same (config, seed);
* for evolutions, numbered snapshot binaries next to them.

Exit codes: 0 success, 2 config validation failure, 3 numerical failure
(blow-up / non-finite), 4 I/O failure.  Validation errors are emitted as
one-line JSON on stderr so callers can parse them.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import _kernels, __version__
from .admissibility import (
    AdmissiblePair,
    EquationParams,
    format_rational,
    gamma_window,
    is_admissible,
    parse_rational,
    sample_admissible_pairs,
    sharpness_region_classify,
)
from .field_io import save_field
from .grid import Grid, field_from_function
from .ineq_lab import (
    hls_check,
    hardy_check,
    kato_yajima_check,
    make_corpus,
    make_pair_corpus,
    weighted_sobolev_check,
)
from .norms import is_divergent, strichartz_ratio
from .propagator import TimeSlab
from .sharpness import carrier_growth_scan, weight_divergence_scan
from .solver import evolve, picard_iterate, scaling_invariance_check

KINDS = (
    "admissible",
    "gamma_window",
    "evolve",
    "picard",
    "scaling",
    "strichartz_scan",
    "sharpness_weight",
    "sharpness_carrier",
    "ineq",
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


class ConfigError(ValueError):
    """Raised for any malformed or out-of-contract configuration."""


class NumericalFailure(RuntimeError):
    """Raised when a run produces blow-up or non-finite results."""


# ---------------------------------------------------------------- config ---

_TOP_KEYS = {"kind", "params", "grid", "time", "output_dir", "seed"}

# per-kind parameter tables: name -> (type, required, default)
# types: "rational" (exact, kept as canonical "num/den" strings in the echo),
# "real", "int", "bool", "str", "real_list", "int_list"
_EQ_KEYS = {
    "alpha": ("rational", True, None),
    "b": ("rational", True, None),
    "p": ("rational", True, None),
    "lambda": ("int", False, 1),
}
_DATA_KEYS = {
    "amplitude": ("real", False, 0.1),
    "sigma": ("real", False, 1.0),
    "center": ("real_list", False, None),
    "carrier": ("real_list", False, None),
}

_PARAM_SPECS = {
    "admissible": {
        "inv_q": ("rational", True, None),
        "inv_r": ("rational", True, None),
        "gamma": ("rational", True, None),
        "s": ("rational", True, None),
        "dim": ("int", True, None),
    },
    "gamma_window": {
        "n": ("int", True, None),
        "s": ("rational", True, None),
        "alpha": ("rational", True, None),
        "b": ("rational", True, None),
    },
    "evolve": {**_EQ_KEYS, **_DATA_KEYS, "store_every": ("int", False, 1), "zero_mode": ("str", False, "zero")},
    "picard": {
        **_EQ_KEYS,
        **_DATA_KEYS,
        "max_iter": ("int", False, 12),
        "tol": ("real", False, 1e-10),
        "metric_gamma": ("rational", False, None),
        "zero_mode": ("str", False, "zero"),
    },
    "scaling": {**_EQ_KEYS, **_DATA_KEYS, "delta": ("real", False, 2.0), "zero_mode": ("str", False, "zero")},
    "strichartz_scan": {
        "gamma": ("rational", True, None),
        "s": ("rational", True, None),
        "count": ("int", False, 10),
        "max_denominator": ("int", False, 24),
        "n_samples": ("int", False, 9),
        **_DATA_KEYS,
    },
    "sharpness_weight": {
        "r": ("real", True, None),
        "gamma": ("real", True, None),
        "refinements": ("int_list", True, None),
        "ball_radius": ("real", False, 0.125),
    },
    "sharpness_carrier": {
        "K_list": ("real_list", True, None),
        "s": ("real", True, None),
        "gamma": ("real", True, None),
        "q": ("real", True, None),
        "r": ("real", True, None),
        "t0": ("real", True, None),
        "n_samples": ("int", False, 5),
    },
    "ineq": {
        "check": ("str", False, "all"),
        "count": ("int", False, 50),
        "gamma1": ("rational", False, Fraction(1, 2)),
        "gamma0": ("rational", False, Fraction(3, 4)),
        "T": ("real", False, 0.3),
        "n_samples": ("int", False, 9),
        "alpha": ("rational", False, Fraction(1)),
        "q": ("rational", False, Fraction(2)),
        "r": ("rational", False, Fraction(2)),
        "s_exp": ("rational", False, Fraction(2)),
        "a": ("rational", False, Fraction(1, 4)),
        "b_pow": ("rational", False, Fraction(1, 4)),
        "r1p": ("rational", False, Fraction(4, 3)),
        "r2p": ("rational", False, Fraction(2)),
        "ws_s": ("rational", False, Fraction(1, 2)),
    },
}


def _coerce(name, value, typ):
    try:
        if typ == "rational":
            if isinstance(value, float):
                raise ConfigError(f"param {name!r}: rationals must be strings or integers, got float {value}")
            return parse_rational(value)
        if typ == "real":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"param {name!r}: expected a number, got {value!r}")
            return float(value)
        if typ == "int":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"param {name!r}: expected an integer, got {value!r}")
            return value
        if typ == "str":
            if not isinstance(value, str):
                raise ConfigError(f"param {name!r}: expected a string, got {value!r}")
            return value
        if typ == "real_list":
            if not isinstance(value, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
                raise ConfigError(f"param {name!r}: expected a list of numbers, got {value!r}")
            return [float(v) for v in value]
        if typ == "int_list":
            if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
                raise ConfigError(f"param {name!r}: expected a list of integers, got {value!r}")
            return list(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"param {name!r}: {exc}") from exc
    raise ConfigError(f"internal: unknown param type {typ}")


class ExperimentConfig:
    """Validated experiment description; serializes canonically."""

    def __init__(self, kind, params, grid, time, output_dir, seed):
        self.kind = kind
        self.params = params
        self.grid = grid
        self.time = time
        self.output_dir = output_dir
        self.seed = seed

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(raw) - _TOP_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kind = raw.get("kind")
        if kind not in KINDS:
            raise ConfigError(f"kind must be one of {list(KINDS)}, got {kind!r}")

        spec = _PARAM_SPECS[kind]
        raw_params = raw.get("params", {})
        if not isinstance(raw_params, dict):
            raise ConfigError("params must be an object")
        unknown = set(raw_params) - set(spec)
        if unknown:
            raise ConfigError(f"unknown params for kind {kind!r}: {sorted(unknown)}")
        params = {}
        for name, (typ, required, default) in spec.items():
            if name in raw_params:
                params[name] = _coerce(name, raw_params[name], typ)
            elif required:
                raise ConfigError(f"kind {kind!r} requires param {name!r}")
            else:
                params[name] = default

        grid = raw.get("grid")
        if grid is not None:
            if not isinstance(grid, dict) or set(grid) != {"dim", "N", "L"}:
                raise ConfigError('grid must be an object with exactly the keys {"dim", "N", "L"}')
            if not isinstance(grid["dim"], int) or not isinstance(grid["N"], int):
                raise ConfigError("grid.dim and grid.N must be integers")
            if not isinstance(grid["L"], (int, float)) or isinstance(grid["L"], bool):
                raise ConfigError("grid.L must be a number")
            grid = {"dim": grid["dim"], "N": grid["N"], "L": float(grid["L"])}

        time = raw.get("time")
        if time is not None:
            if not isinstance(time, dict) or not set(time) <= {"T", "dt"} or "T" not in time:
                raise ConfigError('time must be an object with key "T" and optionally "dt"')
            T = time["T"]
            if not isinstance(T, (int, float)) or isinstance(T, bool) or not T > 0:
                raise ConfigError("time.T must be a positive number")
            dt = time.get("dt")
            if dt is not None and (not isinstance(dt, (int, float)) or isinstance(dt, bool) or not dt > 0):
                raise ConfigError("time.dt must be a positive number")
            time = {"T": float(T), **({"dt": float(dt)} if dt is not None else {})}

        output_dir = raw.get("output_dir", f"runs/{kind}")
        if not isinstance(output_dir, str):
            raise ConfigError("output_dir must be a string")
        seed = raw.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ConfigError("seed must be an integer")
        return cls(kind, params, grid, time, output_dir, seed)

    def to_dict(self) -> dict:
        params = {}
        for k, v in self.params.items():
            if v is None:
                continue
            if isinstance(v, Fraction):
                params[k] = format_rational(v)
            else:
                params[k] = v
        out = {"kind": self.kind, "params": params, "output_dir": self.output_dir, "seed": self.seed}
        if self.grid is not None:
            out["grid"] = self.grid
        if self.time is not None:
            out["time"] = self.time
        return out

    def require_grid(self) -> Grid:
        if self.grid is None:
            raise ConfigError(f"kind {self.kind!r} requires a grid section")
        try:
            return Grid(dim=self.grid["dim"], n_points=self.grid["N"], half_width=self.grid["L"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def require_time(self) -> dict:
        if self.time is None:
            raise ConfigError(f"kind {self.kind!r} requires a time section")
        return self.time


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def config_hash(cfg: ExperimentConfig) -> str:
    return hashlib.sha256(canonical_json(cfg.to_dict()).encode()).hexdigest()


# ------------------------------------------------------------- dispatch ---


def _fmt_cell(v) -> str:
    if is_divergent(v):
        return "DIVERGENT"
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _equation_params(cfg: ExperimentConfig) -> EquationParams:
    p = cfg.params
    g = cfg.require_grid()
    try:
        return EquationParams(dim=g.dim, alpha=p["alpha"], b=p["b"], p=p["p"], lam=p["lambda"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _initial_data(cfg: ExperimentConfig, grid: Grid):
    p = cfg.params
    center = p.get("center") or [0.0] * grid.dim
    carrier = p.get("carrier") or [0.0] * grid.dim
    if len(center) != grid.dim or len(carrier) != grid.dim:
        raise ConfigError("center and carrier must have one entry per dimension")
    amp, sigma = p["amplitude"], p["sigma"]
    if sigma <= 0:
        raise ConfigError("sigma must be positive")

    def fn(*xs):
        quad = sum((x - c) ** 2 for x, c in zip(xs, center))
        osc = sum(k * x for k, x in zip(carrier, xs))
        return amp * np.exp(-quad / (2.0 * sigma**2)) * np.exp(1j * osc)

    return field_from_function(grid, fn)


def _run_admissible(cfg, out_dir):
    p = cfg.params
    try:
        pair = AdmissiblePair(inv_q=p["inv_q"], inv_r=p["inv_r"], gamma=p["gamma"], s=p["s"], dim=p["dim"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    verdict = is_admissible(pair)
    region = sharpness_region_classify(p["inv_q"], p["inv_r"], p["gamma"], p["dim"]) if p["gamma"] > 0 else "inside"
    results = {"pair": pair.to_json(), "verdict": verdict.to_json(), "region": region}
    rows = [(format_rational(p["inv_q"]), format_rational(p["inv_r"]), format_rational(p["gamma"]),
             format_rational(p["s"]), verdict.admissible, ";".join(verdict.violated) or "-")]
    return results, ("inv_q", "inv_r", "gamma", "s", "admissible", "violated"), rows


def _run_gamma_window(cfg, out_dir):
    p = cfg.params
    try:
        report = gamma_window(p["n"], p["s"], p["alpha"], p["b"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    results = {"report": report.to_json(), "window": str(report.window)}
    rows = [(p["n"], format_rational(p["s"]), format_rational(p["alpha"]), format_rational(p["b"]),
             report.ok, format_rational(report.p), str(report.window), ";".join(report.failures) or "-")]
    return results, ("n", "s", "alpha", "b", "ok", "p", "window", "failures"), rows


def _run_evolve(cfg, out_dir):
    grid = cfg.require_grid()
    time = cfg.require_time()
    params = _equation_params(cfg)
    initial = _initial_data(cfg, grid)
    result = evolve(
        initial,
        params,
        time["T"],
        dt=time.get("dt"),
        store_every=cfg.params["store_every"],
        zero_mode=cfg.params["zero_mode"],
    )
    rows = []
    for i, (t, m, e) in enumerate(zip(result.times, result.mass_series, result.energy_series)):
        snap = out_dir / f"snapshot_{i:05d}.bin"
        save_field(result.states[i], snap, extra={"t": float(t)})
        rows.append((i, float(t), float(m), float(e)))
    results = {
        "blew_up": result.blew_up,
        "blow_up_time": result.blow_up_time,
        "dt": result.dt,
        "mass_drift": float(abs(result.mass_series[-1] - result.mass_series[0])),
        "energy_drift": float(abs(result.energy_series[-1] - result.energy_series[0]))
        if not result.blew_up
        else None,
        "snapshots": len(result.states),
    }
    if result.blew_up:
        raise NumericalFailure(f"blow-up at t = {result.blow_up_time}", (results, rows))
    return results, ("index", "t", "mass", "energy"), rows


def _run_picard(cfg, out_dir):
    grid = cfg.require_grid()
    time = cfg.require_time()
    params = _equation_params(cfg)
    initial = _initial_data(cfg, grid)
    metric = None
    if cfg.params["metric_gamma"] is not None:
        from .solver import default_metric_pair

        base = default_metric_pair(params)
        metric = AdmissiblePair(inv_q=base.inv_q, inv_r=base.inv_r, gamma=cfg.params["metric_gamma"],
                                s=cfg.params["metric_gamma"], dim=params.dim)
    res = picard_iterate(
        initial,
        params,
        time["T"],
        dt=time.get("dt"),
        max_iter=cfg.params["max_iter"],
        tol=cfg.params["tol"],
        metric_pair=metric,
        zero_mode=cfg.params["zero_mode"],
    )
    ratios = [res.distances[i + 1] / res.distances[i] for i in range(len(res.distances) - 1)]
    rows = [(i, d, (ratios[i - 1] if 1 <= i <= len(ratios) else "")) for i, d in enumerate(res.distances)]
    results = {
        "converged": res.converged,
        "n_iter": res.n_iter,
        "distances": res.distances,
        "contraction_ratios": ratios,
        "max_contraction_ratio": max(ratios) if ratios else None,
    }
    if not all(math.isfinite(d) for d in res.distances):
        raise NumericalFailure("non-finite Picard distance", (results, rows))
    return results, ("iteration", "distance", "contraction_ratio"), rows


def _run_scaling(cfg, out_dir):
    grid = cfg.require_grid()
    time = cfg.require_time()
    params = _equation_params(cfg)
    p = cfg.params
    center = p.get("center") or [0.0] * grid.dim
    carrier = p.get("carrier") or [0.0] * grid.dim
    amp, sigma = p["amplitude"], p["sigma"]

    def profile(*xs):
        quad = sum((x - c) ** 2 for x, c in zip(xs, center))
        osc = sum(k * x for k, x in zip(carrier, xs))
        return amp * np.exp(-quad / (2.0 * sigma**2)) * np.exp(1j * osc)

    try:
        report = scaling_invariance_check(
            profile, params, grid, time["T"], delta=p["delta"], dt=time.get("dt"), zero_mode=p["zero_mode"]
        )
    except RuntimeError as exc:
        raise NumericalFailure(str(exc), None) from exc
    results = report.to_json()
    rows = [(p["delta"], report.kappa, report.rel_error)]
    return results, ("delta", "kappa", "rel_error"), rows


def _run_strichartz_scan(cfg, out_dir):
    grid = cfg.require_grid()
    time = cfg.require_time()
    p = cfg.params
    pairs = sample_admissible_pairs(p["gamma"], p["s"], grid.dim, p["count"], max_denominator=p["max_denominator"])
    initial = _initial_data(cfg, grid)
    slab = TimeSlab(T=time["T"], n_samples=p["n_samples"])
    rows = []
    ratios_json = []
    for pair in pairs:
        ratio = strichartz_ratio(initial, pair, slab)
        rows.append((format_rational(pair.inv_q), format_rational(pair.inv_r),
                     format_rational(pair.gamma), format_rational(pair.s), _fmt_cell(ratio)))
        ratios_json.append({"pair": pair.to_json(), "ratio": ratio.to_json() if is_divergent(ratio) else ratio})
    results = {"count": len(pairs), "gamma": format_rational(p["gamma"]), "s": format_rational(p["s"]),
               "ratios": ratios_json}
    return results, ("inv_q", "inv_r", "gamma", "s", "ratio"), rows


def _run_sharpness_weight(cfg, out_dir):
    grid_spec = cfg.grid
    if grid_spec is None:
        raise ConfigError("sharpness_weight requires a grid section (dim and L; N comes from refinements)")
    p = cfg.params
    try:
        scan = weight_divergence_scan(
            grid_spec["dim"], p["r"], p["gamma"], p["refinements"],
            half_width=grid_spec["L"], ball_radius=p["ball_radius"],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = [(N, v) for N, v in scan.entries]
    results = scan.to_json()
    # weight-branch verdict: gamma/n >= 1/r <=> r*gamma >= n
    results["divergence_expected"] = bool(p["r"] * p["gamma"] >= grid_spec["dim"])
    return results, ("N", "ball_mass"), rows


def _run_sharpness_carrier(cfg, out_dir):
    grid = cfg.require_grid()
    time = cfg.require_time()
    p = cfg.params
    slab = TimeSlab(T=time["T"], n_samples=p["n_samples"], t0=p["t0"])
    try:
        scan = carrier_growth_scan(grid, p["K_list"], p["s"], p["gamma"], p["q"], p["r"], slab)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = [(K, v, scan.fitted_slope, scan.fit_residual) for K, v in scan.entries]
    return scan.to_json(), ("K", "norm", "slope_fit", "residual"), rows


def _run_ineq(cfg, out_dir):
    grid = cfg.require_grid()
    p = cfg.params
    which = p["check"]
    valid = {"hardy", "kato_yajima", "hls", "weighted_sobolev", "all"}
    if which not in valid:
        raise ConfigError(f"check must be one of {sorted(valid)}, got {which!r}")
    count, seed = p["count"], cfg.seed
    reports = []
    try:
        if which in ("hardy", "all"):
            corpus = make_corpus(grid.dim, count, seed)
            reports.append(hardy_check(corpus, p["gamma1"], grid))
        if which in ("kato_yajima", "all"):
            corpus = make_corpus(grid.dim, count, seed + 1)
            slab = TimeSlab(T=p["T"], n_samples=p["n_samples"])
            reports.append(kato_yajima_check(corpus, p["gamma0"], slab, grid))
        if which in ("hls", "all"):
            pairs = make_pair_corpus(grid.dim, count, seed + 2)
            reports.append(hls_check(pairs, p["alpha"], p["q"], p["r"], p["s_exp"], grid))
        if which in ("weighted_sobolev", "all"):
            corpus = make_corpus(grid.dim, count, seed + 4)
            reports.append(
                weighted_sobolev_check(corpus, p["a"], p["b_pow"], p["r1p"], p["r2p"], p["ws_s"], grid)
            )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = [(r.name, r.samples, r.max_ratio, r.dilation_drift, r.verdict) for r in reports]
    results = {"reports": [r.to_json() for r in reports], "seed": seed}
    return results, ("check", "samples", "max_ratio", "dilation_drift", "verdict"), rows


_RUNNERS = {
    "admissible": _run_admissible,
    "gamma_window": _run_gamma_window,
    "evolve": _run_evolve,
    "picard": _run_picard,
    "scaling": _run_scaling,
    "strichartz_scan": _run_strichartz_scan,
    "sharpness_weight": _run_sharpness_weight,
    "sharpness_carrier": _run_sharpness_carrier,
    "ineq": _run_ineq,
}


# ---------------------------------------------------------------- runner ---


def _write_artifacts(cfg, out_dir: Path, results, header, rows):
    manifest = {
        "config": cfg.to_dict(),
        "config_hash": config_hash(cfg),
        "version": __version__,
        "kernel_backend": _kernels.backend_name(),
    }
    (out_dir / "manifest.json").write_text(canonical_json(manifest))
    (out_dir / "results.json").write_text(canonical_json(results))
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt_cell(v) for v in row))
    (out_dir / "results.csv").write_text("\n".join(lines) + "\n")


def run(cfg: ExperimentConfig) -> int:
    """Execute a validated config; returns the process exit code."""
    out_dir = Path(cfg.output_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        _emit_error("io", str(exc))
        return EXIT_IO
    try:
        results, header, rows = _RUNNERS[cfg.kind](cfg, out_dir)
    except ConfigError as exc:
        _emit_error("validation", str(exc))
        return EXIT_CONFIG
    except NumericalFailure as exc:
        payload = exc.args[1] if len(exc.args) > 1 else None
        if payload is not None:
            results, rows = payload
            header = {"evolve": ("index", "t", "mass", "energy"),
                      "picard": ("iteration", "distance", "contraction_ratio")}.get(cfg.kind, ("value",))
            try:
                _write_artifacts(cfg, out_dir, results, header, rows)
            except OSError:
                pass
        _emit_error("numerical", str(exc.args[0]))
        return EXIT_NUMERICAL
    except OSError as exc:
        _emit_error("io", str(exc))
        return EXIT_IO
    try:
        _write_artifacts(cfg, out_dir, results, header, rows)
    except OSError as exc:
        _emit_error("io", str(exc))
        return EXIT_IO
    return EXIT_OK


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def report(run_dir) -> int:
    """Summarize a finished run from its stored artifacts (no recomputation)."""
    run_dir = Path(run_dir)
    manifest_path = run_dir / "manifest.json"
    results_path = run_dir / "results.json"
    if not manifest_path.exists() or not results_path.exists():
        _emit_error("io", f"no manifest/results in {run_dir}")
        return EXIT_IO
    manifest = json.loads(manifest_path.read_text())
    results = json.loads(results_path.read_text())
    kind = manifest["config"]["kind"]
    print(f"kind: {kind}")
    print(f"config_hash: {manifest['config_hash']}")
    if kind == "admissible":
        v = results["verdict"]
        print(f"admissible: {v['admissible']}  violated: {v['violated'] or '-'}  region: {results['region']}")
    elif kind == "gamma_window":
        rep = results["report"]
        print(f"ok: {rep['ok']}  p: {rep['p']}  window: {results['window']}  failures: {rep['failures'] or '-'}")
    elif kind == "evolve":
        print(f"blew_up: {results['blew_up']}  mass_drift: {results['mass_drift']:.3e}  "
              f"energy_drift: {results['energy_drift']}")
    elif kind == "picard":
        mcr = results["max_contraction_ratio"]
        status = "PASS" if (mcr is not None and mcr <= 0.5) else "FAIL"
        print(f"converged: {results['converged']}  n_iter: {results['n_iter']}")
        print(f"max contraction ratio: {mcr}  (<= 1/2: {status})")
    elif kind == "scaling":
        print(f"delta: {results['delta']}  kappa: {results['kappa']}  rel_error: {results['rel_error']:.3e}")
    elif kind == "strichartz_scan":
        print(f"pairs: {results['count']}  gamma: {results['gamma']}  s: {results['s']}")
        for entry in results["ratios"]:
            pr = entry["pair"]
            print(f"  (1/q={pr['inv_q']}, 1/r={pr['inv_r']}): ratio = {entry['ratio']}")
    elif kind == "sharpness_weight":
        print(f"r: {results['r']}  gamma: {results['gamma']}  growth_factors: "
              + ", ".join(f"{g:.3f}" for g in results["growth_factors"]))
    elif kind == "sharpness_carrier":
        print(f"fitted slope: {results['fitted_slope']:.4f}  target -(s+gamma): {results['predicted_slope']:.4f}")
        print(f"fit residual: {results['fit_residual']:.3e}")
    elif kind == "ineq":
        for rep in results["reports"]:
            print(f"  {rep['name']}: max_ratio={rep['max_ratio']:.4g} drift={rep['dilation_drift']:.2e} "
                  f"verdict={rep['verdict']}")
    return EXIT_OK


# ------------------------------------------------------------------ main ---


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="hartree-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        sp = sub.add_parser(kind, help=f"run a {kind} experiment")
        sp.add_argument("--config", required=True, help="path to the JSON config")
        sp.add_argument("--out", default=None, help="override output_dir")
        sp.add_argument("--seed", type=int, default=None, help="override seed")
        sp.add_argument("--threads", type=int, default=None, help="kernel thread cap (numba backend only)")
    rp = sub.add_parser("report", help="summarize a finished run directory")
    rp.add_argument("run_dir")

    args = parser.parse_args(argv)
    if args.command == "report":
        return report(args.run_dir)

    try:
        raw = json.loads(Path(args.config).read_text())
    except OSError as exc:
        _emit_error("io", f"cannot read config: {exc}")
        return EXIT_IO
    except json.JSONDecodeError as exc:
        _emit_error("validation", f"config is not valid JSON: {exc}")
        return EXIT_CONFIG
    try:
        cfg = ExperimentConfig.from_dict(raw)
    except ConfigError as exc:
        _emit_error("validation", str(exc))
        return EXIT_CONFIG
    if raw.get("kind") != args.command:
        _emit_error("validation", f"config kind {raw.get('kind')!r} does not match subcommand {args.command!r}")
        return EXIT_CONFIG
    if args.out is not None:
        cfg.output_dir = args.out
    if args.seed is not None:
        cfg.seed = args.seed
    if args.threads is not None and _kernels.USING_NUMBA:
        import numba

        # a cap, not a demand: clamp to what the process actually has
        numba.set_num_threads(min(max(1, args.threads), numba.config.NUMBA_NUM_THREADS))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
