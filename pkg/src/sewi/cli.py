"""Command-line entry point.

Subcommands:
    sewi run CONFIG            one simulation; writes report.json,
                               observables.csv, optional snapshots/density
    sewi converge CONFIG --mode {temporal,spatial,coupled}
                               convergence table (CSV + JSON) and an SVG
                               log-log figure
    sewi conserve CONFIG [--T] long-time mass/energy drift at tau and tau/2
    sewi benchmark [...]       two-soliton regression run

Run configs are flat ``key = value`` text files with a typed schema; unknown
keys are rejected with the offending line number. Exit codes: 0 ok, 2 config
error, 3 blow-up, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fieldio, svgplot
from .harness import (
    ExperimentSpec,
    benchmark_soliton,
    conservation_pair,
    coupled_convergence,
    spatial_convergence,
    temporal_convergence,
)
from .integrator import BlowUpError, SolverConfig, evolve
from .model import (
    ConfigurationError,
    NonlinearitySpec,
    make_initial_datum,
    make_potential,
)
from .spectral import Grid

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BLOWUP = 3
EXIT_IO = 4


class ConfigError(ValueError):
    pass


def _parse_bool(s: str) -> bool:
    if s.lower() in ("true", "yes", "1"):
        return True
    if s.lower() in ("false", "no", "0"):
        return False
    raise ValueError(f"expected true/false, got {s!r}")


def _parse_float_list(s: str) -> tuple:
    return tuple(float(v) for v in s.split(",") if v.strip())


def _parse_int_list(s: str) -> tuple:
    return tuple(int(v) for v in s.split(",") if v.strip())


# key -> (parser, default); defaults of None mean "required by the command
# that uses the key".
SCHEMA = {
    "name": (str, "run"),
    "dim": (int, 1),
    "a": (float, None),
    "b": (float, None),
    "n": (int, None),
    "a_y": (float, None),
    "b_y": (float, None),
    "n_y": (int, None),
    "potential": (str, "zero"),
    "v0": (float, 0.0),
    "height": (float, 10.0),
    "edge": (float, 4.0),
    "half_width": (float, 2.0),
    "beta": (float, 0.0),
    "sigma": (float, 1.0),
    "psi0": (str, "gaussian_odd"),
    "psi0_power": (float, 2.51),
    "tau": (float, None),
    "T": (float, None),
    "first_step": (str, "ewi1_substeps"),
    "substeps": (int, 16),
    "projection": (str, "oversampled"),
    "oversample": (int, 4),
    "snapshot_every": (int, None),
    "save_snapshots": (_parse_bool, False),
    "plots": (_parse_bool, True),
    "paper_scale": (_parse_bool, False),
    "outdir": (str, "out"),
    "sweep_taus": (_parse_float_list, None),
    "sweep_ns": (_parse_int_list, None),
    "coupling_c": (float, 10.0),
    "ref_tau": (float, None),
    "ref_n": (int, None),
    "row_first_step": (str, "ewi1"),
}

_ENUMS = {
    "potential": ("zero", "constant", "box1d", "box2d", "h2bump"),
    "psi0": ("odd_power_gaussian", "gaussian_odd", "benchmark_soliton"),
    "first_step": ("ewi1", "ewi1_substeps"),
    "row_first_step": ("ewi1", "ewi1_substeps"),
    "projection": ("oversampled", "pseudospectral"),
}


def parse_config(text: str, source: str = "<config>") -> dict:
    """Parse flat key = value text against the schema. Unknown keys and type
    errors raise :class:`ConfigError` with the line number."""
    cfg = {k: d for k, (_, d) in SCHEMA.items()}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in SCHEMA:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        seen.add(key)
        parser, _ = SCHEMA[key]
        try:
            parsed = parser(val)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {exc}") from exc
        if key in _ENUMS and parsed not in _ENUMS[key]:
            raise ConfigError(
                f"{source}:{lineno}: {key!r} must be one of {_ENUMS[key]}, got {parsed!r}"
            )
        cfg[key] = parsed
    return cfg


def serialize_config(cfg: dict) -> str:
    """Inverse of :func:`parse_config` for set (non-None) keys; floats are
    written with full round-trip precision."""
    lines = []
    for key in SCHEMA:
        val = cfg.get(key)
        if val is None:
            continue
        if isinstance(val, bool):
            sval = "true" if val else "false"
        elif isinstance(val, tuple):
            sval = ",".join(repr(v) for v in val)
        elif isinstance(val, float):
            sval = repr(val)
        else:
            sval = str(val)
        lines.append(f"{key} = {sval}")
    return "\n".join(lines) + "\n"


def _require(cfg: dict, keys, source: str) -> None:
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise ConfigError(f"{source}: missing required keys: {', '.join(missing)}")


def _build_problem(cfg: dict, source: str):
    _require(cfg, ("a", "b", "n"), source)
    dim = cfg["dim"]
    if dim not in (1, 2):
        raise ConfigError(f"{source}: dim must be 1 or 2")
    if dim == 1:
        grid = Grid(cfg["a"], cfg["b"], cfg["n"])
    else:
        ay = cfg["a_y"] if cfg["a_y"] is not None else cfg["a"]
        by = cfg["b_y"] if cfg["b_y"] is not None else cfg["b"]
        ny = cfg["n_y"] if cfg["n_y"] is not None else cfg["n"]
        grid = Grid((cfg["a"], ay), (cfg["b"], by), (cfg["n"], ny))
    pkind = cfg["potential"]
    try:
        if pkind == "constant":
            potential = make_potential("constant", v0=cfg["v0"])
        elif pkind == "box1d":
            potential = make_potential("box1d", height=cfg["height"], edge=cfg["edge"])
        elif pkind == "box2d":
            potential = make_potential("box2d", height=cfg["height"],
                                       half_width=cfg["half_width"])
        else:
            potential = make_potential(pkind)
        nl = NonlinearitySpec(beta=cfg["beta"], sigma=cfg["sigma"])
        if cfg["psi0"] == "odd_power_gaussian":
            psi0 = make_initial_datum("odd_power_gaussian", p=cfg["psi0_power"])
        else:
            psi0 = make_initial_datum(cfg["psi0"])
    except ConfigurationError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    return grid, potential, nl, psi0


def _load(path: str) -> tuple:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, source=path), path


def _outdir(cfg: dict, override=None) -> Path:
    out = Path(override) if override else Path(cfg["outdir"])
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# Subcommands.


def cmd_run(args) -> int:
    cfg, source = _load(args.config)
    _require(cfg, ("tau", "T"), source)
    grid, potential, nl, psi0 = _build_problem(cfg, source)
    out = _outdir(cfg, args.outdir)
    solver = SolverConfig(
        tau=cfg["tau"], T=cfg["T"], first_step=cfg["first_step"],
        substeps=cfg["substeps"], projection=cfg["projection"],
        oversample=cfg["oversample"], snapshot_every=cfg["snapshot_every"],
    )
    observers = []
    if cfg["save_snapshots"]:
        def save_snapshot(n, t, fld):
            fieldio.save_field(fld, out / f"state_{n:08d}.sewi")
        observers.append(save_snapshot)
    try:
        report = evolve(psi0, grid, solver, potential, nl, observers=observers)
    except BlowUpError as err:
        if err.report is not None:
            err.report.save_json(out / "report.json")
            err.report.save_observables_csv(out / "observables.csv")
        fieldio.save_field(err.last_state, out / "last_finite_state.sewi")
        print(f"blow-up: {err}", file=sys.stderr)
        return EXIT_BLOWUP
    report.save_json(out / "report.json")
    report.save_observables_csv(out / "observables.csv")
    fieldio.density_csv(report.final_state, out / "density.csv")
    if cfg["save_snapshots"]:
        pass  # snapshots already written by the observer
    if cfg["plots"]:
        t = [r["t"] for r in report.records]
        m0 = report.records[0]["mass"]
        e0 = report.records[0]["energy"]
        drift_m = [abs(r["mass"] - m0) / abs(m0) for r in report.records]
        if e0 != 0:
            drift_e = [abs(r["energy"] - e0) / abs(e0) for r in report.records]
        else:
            drift_e = [0.0 for _ in report.records]
        svg = svgplot.semilogy(
            [
                {"label": "rel mass drift", "x": t, "y": drift_m},
                {"label": "rel energy drift", "x": t, "y": drift_e},
            ],
            title=f"{cfg['name']}: conservation", xlabel="t", ylabel="relative drift",
        )
        svgplot.save(out / "conservation.svg", svg)
    return EXIT_OK


def _experiment_from_config(cfg: dict, mode: str, source: str) -> ExperimentSpec:
    _require(cfg, ("T", "ref_tau"), source)
    grid, potential, nl, psi0 = _build_problem(cfg, source)
    if mode == "temporal":
        _require(cfg, ("sweep_taus",), source)
        sweep = cfg["sweep_taus"]
        ref_n = grid.n
    elif mode == "spatial":
        _require(cfg, ("sweep_ns",), source)
        sweep = cfg["sweep_ns"]
        ref_n = tuple((cfg["ref_n"] if cfg["ref_n"] else 2 * max(sweep)) for _ in grid.n)
    else:
        _require(cfg, ("sweep_taus",), source)
        sweep = cfg["sweep_taus"]
        ref_n = tuple((cfg["ref_n"] if cfg["ref_n"] else grid.n[0]) for _ in grid.n)
    try:
        return ExperimentSpec(
            name=cfg["name"], a=grid.a, b=grid.b, n=grid.n,
            potential=potential, nl=nl, psi0=psi0, T=cfg["T"],
            mode=mode, sweep=sweep, ref_tau=cfg["ref_tau"], ref_n=ref_n,
            coupling_c=cfg["coupling_c"], row_first_step=cfg["row_first_step"],
            substeps=cfg["substeps"], oversample=cfg["oversample"],
        )
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def cmd_converge(args) -> int:
    cfg, source = _load(args.config)
    if args.paper_scale or cfg["paper_scale"]:
        cfg["ref_tau"] = 1e-5  # full-scale reference step
    spec = _experiment_from_config(cfg, args.mode, source)
    runner = {
        "temporal": temporal_convergence,
        "spatial": spatial_convergence,
        "coupled": coupled_convergence,
    }[args.mode]
    table = runner(spec, cache_dir=args.cache_dir)
    out = _outdir(cfg, args.outdir)
    stem = f"convergence_{args.mode}"
    table.to_csv(out / f"{stem}.csv")
    table.save_json(out / f"{stem}.json")
    xs = [r.resolution for r in table.rows if r.status == "ok"]
    series = [
        {"label": "L2 error", "x": xs,
         "y": [r.e_l2 for r in table.rows if r.status == "ok"]},
        {"label": "H1 error", "x": xs,
         "y": [r.e_h1 for r in table.rows if r.status == "ok"]},
    ]
    guides = []
    for slope in (table.slope_l2, table.slope_h1):
        if slope is not None:
            guides.append(round(slope * 2) / 2)  # nearest half-integer
    xlabel = "tau" if args.mode in ("temporal", "coupled") else "h"
    svg = svgplot.loglog(series, title=f"{spec.name} ({args.mode})",
                         xlabel=xlabel, ylabel="error at T", guides=sorted(set(guides)))
    svgplot.save(out / f"{stem}.svg", svg)
    fit2 = "n/a" if table.slope_l2 is None else f"{table.slope_l2:.3f}"
    fit1 = "n/a" if table.slope_h1 is None else f"{table.slope_h1:.3f}"
    print(f"{spec.name} [{args.mode}]: L2 slope {fit2}, H1 slope {fit1}")
    return EXIT_OK


def cmd_conserve(args) -> int:
    cfg, source = _load(args.config)
    _require(cfg, ("tau",), source)
    if args.paper_scale or cfg["paper_scale"]:
        cfg["T"] = 500.0  # full-scale horizon
    T = args.T if args.T is not None else cfg["T"]
    if T is None:
        raise ConfigError(f"{source}: missing required keys: T (or pass --T)")
    grid, potential, nl, psi0 = _build_problem(cfg, source)
    out = _outdir(cfg, args.outdir)
    try:
        study = conservation_pair(grid, potential, nl, psi0, float(T), cfg["tau"],
                                  oversample=cfg["oversample"])
    except BlowUpError as err:
        print(f"blow-up: {err}", file=sys.stderr)
        return EXIT_BLOWUP
    study.base.to_csv(out / "drift_tau.csv")
    study.half.to_csv(out / "drift_tau_half.csv")
    (out / "conservation_summary.json").write_text(
        json.dumps(study.summary(), indent=2) + "\n"
    )
    svg = svgplot.semilogy(
        [
            {"label": f"mass, tau={study.base.tau:g}", "x": study.base.t.tolist(),
             "y": study.base.rel_mass_err.tolist()},
            {"label": f"energy, tau={study.base.tau:g}", "x": study.base.t.tolist(),
             "y": study.base.rel_energy_err.tolist()},
            {"label": f"mass, tau={study.half.tau:g}", "x": study.half.t.tolist(),
             "y": study.half.rel_mass_err.tolist()},
            {"label": f"energy, tau={study.half.tau:g}", "x": study.half.t.tolist(),
             "y": study.half.rel_energy_err.tolist()},
        ],
        title=f"{cfg['name']}: long-time drift", xlabel="t", ylabel="relative drift",
    )
    svgplot.save(out / "conservation.svg", svg)
    s = study.summary()
    print(
        f"max drifts at tau: mass {s['max_mass_drift']:.3e}, energy "
        f"{s['max_energy_drift']:.3e}; halving ratios {s['mass_ratio']:.2f} / "
        f"{s['energy_ratio']:.2f}"
    )
    return EXIT_OK


def cmd_benchmark(args) -> int:
    if args.paper_scale:
        tau, n, T = 2.5e-6, 2048, 200.0
    else:
        tau, n, T = args.tau, args.n, args.T
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        result = benchmark_soliton(tau=tau, n=n, T=T)
    except BlowUpError as err:
        print(f"blow-up: {err}", file=sys.stderr)
        return EXIT_BLOWUP
    result.report.save_json(out / "report.json")
    result.report.save_observables_csv(out / "observables.csv")
    fieldio.density_csv(result.report.final_state, out / "density.csv")
    series = []
    for t, x, dens in result.densities:
        series.append({"label": f"t={t:g}", "x": x.tolist(),
                       "y": np.maximum(dens, 1e-300).tolist()})
    svg = svgplot.semilogy(series, title="two-soliton density", xlabel="x",
                           ylabel="|u|^2")
    svgplot.save(out / "density.svg", svg)
    print(result.note)
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sewi",
        description="Symmetric exponential wave integrator for the periodic "
                    "nonlinear Schrodinger equation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one simulation")
    p_run.add_argument("config")
    p_run.add_argument("--outdir", default=None)
    p_run.set_defaults(func=cmd_run)

    p_conv = sub.add_parser("converge", help="convergence study")
    p_conv.add_argument("config")
    p_conv.add_argument("--mode", required=True,
                        choices=("temporal", "spatial", "coupled"))
    p_conv.add_argument("--outdir", default=None)
    p_conv.add_argument("--cache-dir", default=None)
    p_conv.set_defaults(func=cmd_converge)

    p_cons = sub.add_parser("conserve", help="long-time mass/energy drift")
    p_cons.add_argument("config")
    p_cons.add_argument("--T", type=float, default=None)
    p_cons.add_argument("--outdir", default=None)
    p_cons.set_defaults(func=cmd_conserve)

    p_bench = sub.add_parser("benchmark", help="two-soliton benchmark run")
    p_bench.add_argument("--tau", type=float, default=1e-4)
    p_bench.add_argument("--n", type=int, default=1024)
    p_bench.add_argument("--T", type=float, default=1.0)
    p_bench.add_argument("--outdir", default="out_benchmark")
    p_bench.add_argument("--paper-scale", action="store_true")
    p_bench.set_defaults(func=cmd_benchmark)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, ConfigurationError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
