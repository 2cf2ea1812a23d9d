"""Command line driver: configured runs, sweeps, tables, acceptance suite.

Configs are flat INI-style key-value files with sections; every key is
validated against a schema before anything is allocated, and unknown keys
are rejected with the offending line number.  Exit codes: 0 ok, 1 blow-up,
2 bad configuration.
"""

from __future__ import annotations

import argparse
import configparser
import math
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .acceptance import format_result, run_suite
from .bi import BiConfig, BiState, run_bi
from .diagnostics import (
    write_diagnostics_csv,
    write_dispersion_csv,
    write_physical_csv,
    write_snapshot,
)
from .geometry import (
    SurfaceField,
    biharmonic_reduction_slope,
    curvature_samples,
    gauss_bonnet_integral,
)
from .linear import ModelParams, dispersion_table
from .spectral import SpectralField, TorusGrid, derivative, random_field
from .uni import UniConfig, decay_rate_fit, run

OUTPUT_ROOT_ENV = "HYDROELASTIC_OUTPUT_ROOT"

MODELS = ("uni1", "uni2", "bi1", "bi2", "linear", "geometry-check")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    model: str = "uni1"
    upsilon: float = 1.0
    delta: float = 1.0
    beta: float = 1.0
    epsilon: float = 0.1
    n: int = 64
    dt: float = 0.05
    t_end: float = 10.0
    output_every: int = 1
    seed: int = 0
    norm: float = 0.01
    band: int = 8
    s: float = 2.0
    output_dir: str = "run"

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.upsilon, self.delta, self.beta, self.epsilon)


PRESETS = {
    "decay-small-uni1": dict(
        model="uni1", upsilon=1.0, delta=1.0, beta=1.0, epsilon=0.1,
        n=128, dt=0.05, t_end=20.0, output_every=2,
        seed=5, norm=0.01, band=16, s=2.0, output_dir="decay-small-uni1",
    ),
    "bounded-small-uni2": dict(
        model="uni2", upsilon=1.0, delta=1.0, beta=1.0, epsilon=0.1,
        n=128, dt=0.05, t_end=20.0, output_every=2,
        seed=6, norm=0.005, band=16, s=3.0, output_dir="bounded-small-uni2",
    ),
    "dispersion-table": dict(
        model="dispersion-table", upsilon=1.0, delta=1.0, beta=1.0, epsilon=0.1,
        output_dir="dispersion-table",
    ),
}

_SCHEMA = {
    "run": {"model", "preset"},
    "params": {"upsilon", "delta", "beta", "epsilon"},
    "grid": {"n"},
    "integrator": {"dt", "t_end", "output_every"},
    "initial": {"seed", "norm", "band", "s"},
    "output": {"dir"},
    "sweep": {"key", "values"},
}

_FLOAT_KEYS = {"upsilon", "delta", "beta", "epsilon", "dt", "t_end", "norm", "s"}
_INT_KEYS = {"n", "output_every", "seed", "band"}


def _line_map(text: str) -> dict:
    """(section, key) -> 1-based line number, for anchored error messages."""
    out = {}
    section = None
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            out[(section, None)] = i
        elif "=" in line and section is not None:
            key = line.split("=", 1)[0].strip()
            out[(section, key)] = i
    return out


def parse_config(path) -> tuple:
    """Read a run config; returns (RunConfig, sweep spec or None)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    lines = _line_map(text)
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    for section in cp.sections():
        if section not in _SCHEMA:
            where = lines.get((section, None), 0)
            raise ConfigError(f"{path}:{where}: unknown section [{section}]")
        for key in cp[section]:
            if key not in _SCHEMA[section]:
                where = lines.get((section, key), 0)
                raise ConfigError(f"{path}:{where}: unknown key '{key}' in [{section}]")

    values = {}
    preset = cp.get("run", "preset", fallback="").strip()
    if preset:
        if preset not in PRESETS:
            where = lines.get(("run", "preset"), 0)
            raise ConfigError(f"{path}:{where}: unknown preset '{preset}'")
        values.update(PRESETS[preset])

    def take(section, key, field=None):
        if not cp.has_option(section, key):
            return
        raw = cp.get(section, key).strip()
        field = field or key
        where = lines.get((section, key), 0)
        try:
            if field in _FLOAT_KEYS:
                values[field] = float(raw)
            elif field in _INT_KEYS:
                values[field] = int(raw)
            else:
                values[field] = raw
        except ValueError as exc:
            raise ConfigError(f"{path}:{where}: bad value for '{key}': {exc}") from exc

    take("run", "model")
    for k in ("upsilon", "delta", "beta", "epsilon"):
        take("params", k)
    take("grid", "n")
    for k in ("dt", "t_end", "output_every"):
        take("integrator", k)
    for k in ("seed", "norm", "band", "s"):
        take("initial", k)
    take("output", "dir", "output_dir")

    config = RunConfig(**values)
    if config.model not in MODELS + ("dispersion-table",):
        where = lines.get(("run", "model"), 0)
        raise ConfigError(f"{path}:{where}: unknown model '{config.model}'")

    sweep = None
    if cp.has_section("sweep"):
        key = cp.get("sweep", "key", fallback="").strip()
        raw_values = cp.get("sweep", "values", fallback="").strip()
        if not key or not raw_values:
            where = lines.get(("sweep", None), 0)
            raise ConfigError(f"{path}:{where}: [sweep] needs both 'key' and 'values'")
        if key not in _FLOAT_KEYS | _INT_KEYS:
            where = lines.get(("sweep", "key"), 0)
            raise ConfigError(f"{path}:{where}: cannot sweep over '{key}'")
        try:
            vals = [int(v) if key in _INT_KEYS else float(v) for v in raw_values.split(",")]
        except ValueError as exc:
            where = lines.get(("sweep", "values"), 0)
            raise ConfigError(f"{path}:{where}: bad sweep values: {exc}") from exc
        sweep = (key, vals)
    return config, sweep


def _echo_config(config: RunConfig, outdir: Path) -> None:
    cp = configparser.ConfigParser()
    cp["run"] = {"model": config.model}
    cp["params"] = {
        "upsilon": repr(config.upsilon),
        "delta": repr(config.delta),
        "beta": repr(config.beta),
        "epsilon": repr(config.epsilon),
    }
    cp["grid"] = {"n": str(config.n)}
    cp["integrator"] = {
        "dt": repr(config.dt),
        "t_end": repr(config.t_end),
        "output_every": str(config.output_every),
    }
    cp["initial"] = {
        "seed": str(config.seed),
        "norm": repr(config.norm),
        "band": str(config.band),
        "s": repr(config.s),
    }
    cp["output"] = {"dir": config.output_dir}
    with open(outdir / "config.resolved.ini", "w") as fh:
        cp.write(fh)


def _write_summary(outdir: Path, entries: dict) -> None:
    with open(outdir / "summary.txt", "w") as fh:
        for k, v in entries.items():
            fh.write(f"{k}={v}\n")


def run_scenario(config: RunConfig, output_root: Path) -> int:
    outdir = output_root / config.output_dir
    outdir.mkdir(parents=True, exist_ok=True)
    _echo_config(config, outdir)

    if config.model == "dispersion-table":
        ks = np.arange(0.25, 32.0 + 1e-9, 0.25)
        rows = dispersion_table(ks, config.params)
        write_dispersion_csv(rows, outdir / "dispersion.csv")
        _write_summary(outdir, {"status": "ok", "rows": len(rows)})
        return 0

    if config.model == "geometry-check":
        grid = TorusGrid(config.n, dim=2)
        c = np.zeros(grid.shape, dtype=complex)
        c[1, 0] = c[-1, 0] = 0.5
        c[1, 1] = c[-1, -1] = 0.25
        eta = SpectralField(grid, c)
        eps_list = (0.1, 0.05, 0.025)
        slope = biharmonic_reduction_slope(eta, eps_list)
        gb = max(abs(gauss_bonnet_integral(SurfaceField(eta, e))) for e in eps_list)
        H, K = curvature_samples(SurfaceField(eta, eps_list[0]))
        write_physical_csv(H, outdir / "mean_curvature.csv")
        write_physical_csv(K, outdir / "gauss_curvature.csv")
        _write_summary(
            outdir,
            {"status": "ok", "biharmonic_slope": repr(slope), "curvature_integral": repr(gb)},
        )
        return 0

    if config.model in ("uni1", "uni2", "linear"):
        grid = TorusGrid(config.n, dim=1)
        F0 = random_field(grid, seed=config.seed, band=config.band, s=config.s, norm=config.norm)
        model = 2 if config.model == "uni2" else 1
        ucfg = UniConfig(
            model,
            config.params,
            grid,
            dt=config.dt,
            t_end=config.t_end,
            output_every=config.output_every,
            linear_only=(config.model == "linear"),
        )
        traj = run(ucfg, F0)
        write_diagnostics_csv(traj.reports, outdir / "diagnostics.csv", config.model)
        write_snapshot(traj.states[-1], outdir / "state.snap")
        summary = {
            "status": "blow-up" if traj.blew_up else "ok",
            "last_good_time": repr(traj.last_good_time),
            "samples": len(traj.reports),
        }
        if not traj.blew_up and len(traj.reports) >= 20 and np.all(traj.energies > 0):
            c_fit, C_fit, resid = decay_rate_fit(traj)
            summary["decay_c"] = repr(c_fit)
            summary["decay_C"] = repr(C_fit)
            summary["decay_rms"] = repr(resid)
        _write_summary(outdir, summary)
        return 1 if traj.blew_up else 0

    # bidirectional
    grid = TorusGrid(config.n, dim=2)
    f0 = random_field(grid, seed=config.seed, band=config.band, s=config.s, norm=config.norm)
    v0 = SpectralField(grid, -derivative(f0, 0).coeffs)
    model = 2 if config.model == "bi2" else 1
    bcfg = BiConfig(
        model,
        config.params,
        grid,
        dt=config.dt,
        t_end=config.t_end,
        output_every=config.output_every,
    )
    traj = run_bi(bcfg, BiState(f0, v0))
    write_diagnostics_csv(traj.reports, outdir / "diagnostics.csv", config.model)
    write_snapshot(traj.states[-1].f, outdir / "f.snap")
    write_snapshot(traj.states[-1].v, outdir / "v.snap")
    _write_summary(
        outdir,
        {
            "status": "blow-up" if traj.blew_up else "ok",
            "last_good_time": repr(traj.last_good_time),
            "samples": len(traj.reports),
        },
    )
    return 1 if traj.blew_up else 0


def nondimensionalize(
    rho_s: float,
    h: float,
    rho_f: float,
    L: float,
    B: float,
    g: float,
    gamma: float,
    H: float,
    beta_convention: str = "plain",
):
    """Dimensionless (Upsilon, delta, beta, epsilon) from SI plate/fluid data.

    beta_convention 'plain' uses B/(rho_f g L^3); 'amplitude-scaled' uses the
    variant with an extra H/L factor.  Both appear in practice and the choice
    is reported back to the caller.
    """
    vals = dict(rho_s=rho_s, h=h, rho_f=rho_f, L=L, B=B, g=g, gamma=gamma, H=H)
    for name, v in vals.items():
        if v <= 0:
            raise ValueError(f"{name} must be positive")
    if beta_convention not in ("plain", "amplitude-scaled"):
        raise ValueError("beta_convention must be 'plain' or 'amplitude-scaled'")
    upsilon = rho_s * h / (rho_f * L)
    delta = gamma / (rho_f * math.sqrt(g * L**3))
    epsilon = H / L
    beta = B / (rho_f * g * L**3)
    if beta_convention == "amplitude-scaled":
        beta *= H / L
    note = f"beta convention: {beta_convention}"
    return ModelParams(upsilon=upsilon, delta=delta, beta=beta, epsilon=epsilon), note


def _output_root(args) -> Path:
    if getattr(args, "output", None):
        return Path(args.output)
    return Path(os.environ.get(OUTPUT_ROOT_ENV, "runs"))


def _cmd_run(args) -> int:
    if bool(args.config) == bool(args.preset):
        print("run: give exactly one of --config or --preset", file=sys.stderr)
        return 2
    try:
        if args.config:
            config, sweep = parse_config(args.config)
            if sweep is not None:
                print("run: config has a [sweep] section; use the sweep subcommand", file=sys.stderr)
                return 2
        else:
            if args.preset not in PRESETS:
                raise ConfigError(f"unknown preset '{args.preset}'")
            config = RunConfig(**PRESETS[args.preset])
        status = run_scenario(config, _output_root(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    print(f"{config.model}: wrote {_output_root(args) / config.output_dir}")
    return status


def _cmd_sweep(args) -> int:
    try:
        config, sweep = parse_config(args.config)
        if sweep is None:
            raise ConfigError(f"{args.config}: sweep needs a [sweep] section")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    key, values = sweep
    worst = 0
    root = _output_root(args)
    for v in values:
        sub = replace(config, **{key: v}, output_dir=f"{config.output_dir}/{key}={v:g}")
        status = run_scenario(sub, root)
        print(f"{key}={v:g}: {'ok' if status == 0 else 'blow-up'}")
        worst = max(worst, status)
    return worst


def _cmd_dispersion(args) -> int:
    params = ModelParams(args.upsilon, args.delta, args.beta, args.epsilon)
    ks = np.arange(args.k_step, args.k_max + 1e-9, args.k_step)
    rows = dispersion_table(ks, params)
    write_dispersion_csv(rows, args.output)
    print(f"wrote {len(rows)} rows to {args.output}")
    return 0


def _cmd_geometry_check(args) -> int:
    config = RunConfig(model="geometry-check", n=args.n, output_dir="geometry-check")
    status = run_scenario(config, _output_root(args))
    summary = (_output_root(args) / "geometry-check" / "summary.txt").read_text()
    print(summary.strip())
    return status


def _cmd_acceptance(args) -> int:
    results = run_suite(args.suite)
    for r in results:
        print(format_result(r))
    return 0 if all(r.passed for r in results) else 1


def _cmd_nondim(args) -> int:
    try:
        params, note = nondimensionalize(
            args.rho_s, args.h, args.rho_f, args.L, args.B, args.g, args.gamma, args.H,
            beta_convention=args.beta_convention,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"upsilon = {params.upsilon:.6g}")
    print(f"delta   = {params.delta:.6g}")
    print(f"beta    = {params.beta:.6g}")
    print(f"epsilon = {params.epsilon:.6g}")
    print(note)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hydroelastic", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("run", help="run one configured scenario")
    pr.add_argument("--config", help="INI config file")
    pr.add_argument("--preset", help="named preset: " + ", ".join(sorted(PRESETS)))
    pr.add_argument("--output", help="output root (default $%s or ./runs)" % OUTPUT_ROOT_ENV)
    pr.set_defaults(func=_cmd_run)

    ps = sub.add_parser("sweep", help="run a config once per sweep value")
    ps.add_argument("--config", required=True)
    ps.add_argument("--output")
    ps.set_defaults(func=_cmd_sweep)

    pd = sub.add_parser("dispersion", help="tabulate roots and reduction symbols")
    pd.add_argument("--upsilon", type=float, default=1.0)
    pd.add_argument("--delta", type=float, default=1.0)
    pd.add_argument("--beta", type=float, default=1.0)
    pd.add_argument("--epsilon", type=float, default=0.1)
    pd.add_argument("--k-max", type=float, default=32.0)
    pd.add_argument("--k-step", type=float, default=0.25)
    pd.add_argument("--output", default="dispersion.csv")
    pd.set_defaults(func=_cmd_dispersion)

    pg = sub.add_parser("geometry-check", help="biharmonic reduction and curvature integral")
    pg.add_argument("-n", type=int, default=64)
    pg.add_argument("--output")
    pg.set_defaults(func=_cmd_geometry_check)

    pa = sub.add_parser("acceptance", help="run acceptance criteria")
    pa.add_argument("suite", nargs="?", default="all", help="all, a number 1-10, or a name")
    pa.set_defaults(func=_cmd_acceptance)

    pn = sub.add_parser("nondim", help="dimensionless parameters from SI inputs")
    pn.add_argument("--rho-s", type=float, required=True, dest="rho_s")
    pn.add_argument("--h", type=float, required=True)
    pn.add_argument("--rho-f", type=float, required=True, dest="rho_f")
    pn.add_argument("--L", type=float, required=True)
    pn.add_argument("--B", type=float, required=True)
    pn.add_argument("--g", type=float, default=9.81)
    pn.add_argument("--gamma", type=float, required=True)
    pn.add_argument("--H", type=float, required=True)
    pn.add_argument("--beta-convention", choices=("plain", "amplitude-scaled"), default="plain")
    pn.set_defaults(func=_cmd_nondim)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
