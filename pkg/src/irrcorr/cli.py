"""
Command-line front end producing plot-ready CSV/JSON tables.

Subcommands: ``sweep`` (grid over oscillator parameters), ``random``
(uniformly sampled steady states plus bound curves), ``optomech``
(detuning or coupling scans) and ``trajectory`` (relaxation dynamics).

Parameters come from a ``key = value`` config file (``--config``) and
``--set key=value`` overrides. Grid values accept a single number, a
comma-separated list, ``start:stop:num`` (linear) or ``log:start:stop:num``.
Multiple grid keys form a Cartesian product.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .core import (
    IntegrationError,
    OscillatorParams,
    StabilityError,
    UnphysicalStateError,
    build_diffusion,
    build_drift,
    check_physical,
    integrate_covariance,
    is_stable,
    steady_state,
    thermal_covariance,
)
from .correlations import DiscordOptimizationError, wigner_shannon_entropy
from .entropy import entropy_flux_trace, entropy_production_trace, entropy_rate
from .optomech import OptomechConfig, evaluate as evaluate_optomech, pi_small_g_expansion
from .sampler import (
    RNG_ALGORITHM,
    STABILITY_MARGIN,
    SampleSpec,
    bound_curves,
    evaluate_point,
    mutual_info_lower_asymptote,
    sample_steady_states,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

UNITS = "frequencies and rates in units of omega_b (omega_m for optomech); entropies in nats"


class UsageError(Exception):
    pass


# --- config parsing ----------------------------------------------------------


def parse_grid(text: str) -> list[float]:
    text = text.strip()
    try:
        if text.startswith("log:"):
            a, b, n = text[4:].split(":")
            vals = np.geomspace(float(a), float(b), int(n))
        elif ":" in text:
            a, b, n = text.split(":")
            vals = np.linspace(float(a), float(b), int(n))
        else:
            vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}: {exc}") from None
    vals = [float(v) for v in vals]
    if not vals:
        raise UsageError(f"empty grid {text!r}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"grid {text!r} has non-finite values")
    return vals


def parse_range(text: str) -> tuple[float, float]:
    parts = text.replace(":", ",").split(",")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"range must be 'lo:hi', got {text!r}") from None
    return lo, hi


def parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"expected a number, got {text!r}") from None


def parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None


def parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


# key -> (parser, default); a default of None means optional and unset
COMMAND_KEYS = {
    "sweep": {
        "omega_a": (parse_grid, "1"),
        "G": (parse_grid, "0.1"),
        "kappa_a": (parse_grid, "0.2"),
        "kappa_b": (parse_grid, "0.2"),
        "N_a": (parse_grid, "0"),
        "N_b": (parse_grid, "0"),
        "N_ratio": (parse_grid, None),
    },
    "random": {
        "omega_a_range": (parse_range, "0:3"),
        "G_range": (parse_range, "0:2"),
        "N_a_range": (parse_range, "0:10"),
        "N_b_range": (parse_range, "0:10"),
        "kappa_a": (parse_float, "0.5"),
        "kappa_b": (parse_float, "1"),
        "count": (parse_int, "10000"),
        "seed": (parse_int, "0"),
        "bounds": (str, "both"),
        "curve_points": (parse_int, "201"),
        "G_max": (parse_float, None),
    },
    "optomech": {
        "Delta": (parse_grid, "-3:3:601"),
        "g": (parse_grid, "0.005"),
        "kappa": (parse_grid, "0.2"),
        "gamma_m": (parse_grid, "1e-4"),
        "N": (parse_grid, "1000"),
        "sweep": (str, "Delta"),
    },
    "trajectory": {
        "omega_a": (parse_float, "1"),
        "G": (parse_float, "0.1"),
        "kappa_a": (parse_float, "0.2"),
        "kappa_b": (parse_float, "0.2"),
        "N_a": (parse_float, "0"),
        "N_b": (parse_float, "0"),
        "t_final": (parse_float, "50"),
        "dt": (parse_float, None),
        "record_every": (parse_int, "10"),
        "initial": (str, "thermal"),
        "initial_N_a": (parse_float, None),
        "initial_N_b": (parse_float, None),
        "initial_sigma": (parse_floats, None),
    },
}


def read_config_text(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value
    return out


def recipe_names() -> list[str]:
    root = resources.files("irrcorr") / "recipes"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".cfg"))


def load_config(path: str) -> dict[str, str]:
    """Read a config file; a bare name such as ``fig3`` resolves to a shipped recipe."""
    p = Path(path)
    if p.is_file():
        return read_config_text(p.read_text(encoding="utf-8"))
    name = path[:-4] if path.endswith(".cfg") else path
    recipe = resources.files("irrcorr") / "recipes" / f"{name}.cfg"
    if "/" not in name and recipe.is_file():
        return read_config_text(recipe.read_text(encoding="utf-8"))
    raise FileNotFoundError(f"config file not found: {path}")


def resolve_config(command: str, raw: dict[str, str]) -> dict:
    raw = dict(raw)
    declared = raw.pop("command", command)
    if declared != command:
        raise UsageError(f"config is for '{declared}', not '{command}'")
    keys = COMMAND_KEYS[command]
    unknown = sorted(set(raw) - set(keys))
    if unknown:
        raise UsageError(f"unknown keys for {command}: {', '.join(unknown)}")
    cfg = {}
    for key, (parser, default) in keys.items():
        text = raw.get(key, default)
        cfg[key] = None if text is None else parser(text)
    return cfg


# --- record builders ----------------------------------------------------------

SCHEMAS = {
    "sweep": [
        ("omega_a", "frequency of oscillator a"),
        ("G", "coupling strength"),
        ("kappa_a", "dissipation rate of a"),
        ("kappa_b", "dissipation rate of b"),
        ("N_a", "bath occupation of a"),
        ("N_b", "bath occupation of b"),
        ("stable", "1 if the drift spectrum lies left of -margin, else 0"),
        ("max_real_part", "largest real part of the drift eigenvalues"),
        ("mu_a", "contribution of a to the production rate"),
        ("mu_b", "contribution of b to the production rate"),
        ("pi_s", "stationary entropy production rate"),
        ("phi_s", "stationary entropy flux (= -pi_s)"),
        ("mutual_info", "Renyi-2 mutual information"),
        ("discord", "Renyi-2 Gaussian discord, measurement on b"),
        ("classical_J", "one-way classical correlations mutual_info - discord"),
        ("log_neg", "logarithmic negativity"),
    ],
    "random": [
        ("index", "draw index"),
        ("omega_a", "frequency of oscillator a"),
        ("G", "coupling strength"),
        ("N_a", "bath occupation of a"),
        ("N_b", "bath occupation of b"),
        ("stable", "1 if the steady state exists, else 0"),
        ("max_real_part", "largest real part of the drift eigenvalues"),
        ("pi_s", "stationary entropy production rate"),
        ("mutual_info", "Renyi-2 mutual information"),
        ("discord", "Renyi-2 Gaussian discord, measurement on b"),
        ("log_neg", "logarithmic negativity"),
        ("label", "entangled, separable or unstable"),
    ],
    "random-curves": [
        ("curve", "mutual_info_upper, mutual_info_lower or discord_upper"),
        ("G", "coupling along the extremal family"),
        ("pi_s", "stationary entropy production rate"),
        ("value", "mutual information or discord"),
    ],
    "optomech": [
        ("Delta", "effective detuning"),
        ("g", "enhanced optomechanical coupling"),
        ("kappa", "cavity decay rate"),
        ("gamma_m", "mechanical damping rate"),
        ("N", "mechanical bath occupation"),
        ("stable", "1 if the linearized dynamics is stable, else 0"),
        ("max_real_part", "largest real part of the drift eigenvalues"),
        ("mu_a", "optical contribution to the production rate"),
        ("mu_b", "mechanical contribution to the production rate"),
        ("pi_s", "stationary entropy production rate"),
        ("pi_small_g", "second-order expansion of pi_s"),
        ("mutual_info", "Renyi-2 mutual information"),
        ("discord", "Renyi-2 Gaussian discord, measurement on the mechanics"),
        ("log_neg", "logarithmic negativity"),
        ("regime", "cooling (mu_b < 0), heating, or unstable"),
    ],
    "trajectory": [
        ("t", "time"),
        ("S", "Wigner entropy of the state"),
        ("dS_dt", "entropy rate"),
        ("phi", "entropy flux"),
        ("pi", "entropy production rate"),
        ("residual", "dS_dt - phi - pi"),
    ],
}


def sweep_record(params: OscillatorParams) -> dict:
    pt = evaluate_point(params)
    rec = {k: params.as_dict()[k] for k in ("omega_a", "G", "kappa_a", "kappa_b", "N_a", "N_b")}
    rec.update(
        stable=pt.stable,
        max_real_part=pt.max_real_part,
        mu_a=pt.mu_a,
        mu_b=pt.mu_b,
        pi_s=pt.pi_s,
        phi_s=-pt.pi_s,
        mutual_info=pt.mutual_info,
        discord=pt.discord,
        classical_J=pt.mutual_info - pt.discord,
        log_neg=pt.log_neg,
    )
    return rec


def optomech_record(cfg: OptomechConfig) -> dict:
    r = evaluate_optomech(cfg)
    return {
        "Delta": cfg.Delta,
        "g": cfg.g,
        "kappa": cfg.kappa,
        "gamma_m": cfg.gamma_m,
        "N": cfg.N,
        "stable": r.stable,
        "max_real_part": r.max_real_part,
        "mu_a": r.mu_a,
        "mu_b": r.mu_b,
        "pi_s": r.pi_s,
        "pi_small_g": pi_small_g_expansion(cfg),
        "mutual_info": r.mutual_info,
        "discord": r.discord,
        "log_neg": r.log_neg,
        "regime": r.regime,
    }


def parallel_map(fn, items: list, workers: int) -> list:
    """Order-preserving map, in a process pool when ``workers > 1``."""
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (8 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


# --- commands ------------------------------------------------------------


@dataclass
class Output:
    records: list[dict]
    columns: list[str]
    metadata: dict
    curves: list[dict] | None = None


def cmd_sweep(cfg: dict, workers: int = 1) -> Output:
    ratio = cfg["N_ratio"]
    last = "N_ratio" if ratio is not None else "N_b"
    order = ["kappa_a", "kappa_b", "G", "N_a", last, "omega_a"]
    params = []
    for combo in itertools.product(*(cfg[k] for k in order)):
        d = dict(zip(order, combo))
        if ratio is not None:
            d["N_b"] = d.pop("N_ratio") * d["N_a"]
        try:
            params.append(OscillatorParams(**d))
        except ValueError as exc:
            raise UsageError(f"invalid grid point {d}: {exc}") from None
    records = parallel_map(sweep_record, params, workers)
    if ratio is not None:
        for rec in records:
            rec["N_ratio"] = rec["N_b"] / rec["N_a"] if rec["N_a"] else math.nan
    columns = [c for c, _ in SCHEMAS["sweep"]] + (["N_ratio"] if ratio is not None else [])
    meta = {
        "command": "sweep",
        "points": len(records),
        "stable": sum(r["stable"] for r in records),
        "stability_margin": STABILITY_MARGIN,
    }
    return Output(records, columns, meta)


def cmd_random(cfg: dict, workers: int = 1) -> Output:
    try:
        spec = SampleSpec(
            omega_a_range=cfg["omega_a_range"],
            G_range=cfg["G_range"],
            N_a_range=cfg["N_a_range"],
            N_b_range=cfg["N_b_range"],
            kappa_a=cfg["kappa_a"],
            kappa_b=cfg["kappa_b"],
            count=cfg["count"],
            seed=cfg["seed"],
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not 0 <= spec.seed < 2**64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    kinds = {"both": ["mutual_info", "discord"], "none": []}.get(cfg["bounds"], [cfg["bounds"]])
    if any(k not in ("mutual_info", "discord") for k in kinds):
        raise UsageError(f"bounds must be mutual_info, discord, both or none, got {cfg['bounds']!r}")
    if cfg["curve_points"] < 2:
        raise UsageError("curve_points must be >= 2")

    points = sample_steady_states(spec, workers=workers)
    records = []
    for i, p in enumerate(points):
        label = "unstable" if not p.stable else ("entangled" if p.entangled else "separable")
        records.append(
            {
                "index": i,
                "omega_a": p.params.omega_a,
                "G": p.params.G,
                "N_a": p.params.N_a,
                "N_b": p.params.N_b,
                "stable": p.stable,
                "max_real_part": p.max_real_part,
                "pi_s": p.pi_s,
                "mutual_info": p.mutual_info,
                "discord": p.discord,
                "log_neg": p.log_neg,
                "label": label,
            }
        )
    G_max = cfg["G_max"] if cfg["G_max"] is not None else spec.G_range[1]
    curves = []
    truncated = {}
    for kind in kinds:
        for side, curve in bound_curves(kind, spec.kappa_a, spec.kappa_b, G_max, cfg["curve_points"], spec.N_max).items():
            truncated[curve.name] = curve.truncated
            for g, pi, v in zip(curve.G, curve.pi_s, curve.value):
                curves.append({"curve": curve.name, "G": g, "pi_s": pi, "value": v})
    n_stable = sum(p.stable for p in points)
    meta = {
        "command": "random",
        "rng": RNG_ALGORITHM,
        "seed": spec.seed,
        "count": spec.count,
        "stable": n_stable,
        "entangled": sum(p.entangled for p in points),
        "omega_a_range": list(spec.omega_a_range),
        "G_range": list(spec.G_range),
        "N_a_range": list(spec.N_a_range),
        "N_b_range": list(spec.N_b_range),
        "kappa_a": spec.kappa_a,
        "kappa_b": spec.kappa_b,
        "stability_margin": STABILITY_MARGIN,
        "curves_truncated": truncated,
    }
    if "mutual_info" in kinds:
        meta["mutual_info_lower_asymptote"] = mutual_info_lower_asymptote(spec.kappa_a, spec.kappa_b)
    return Output(records, [c for c, _ in SCHEMAS["random"]], meta, curves if kinds else None)


def cmd_optomech(cfg: dict, workers: int = 1) -> Output:
    inner = cfg["sweep"]
    if inner not in ("Delta", "g"):
        raise UsageError(f"sweep must be 'Delta' or 'g', got {inner!r}")
    outer = "g" if inner == "Delta" else "Delta"
    order = ["kappa", "gamma_m", "N", outer, inner]
    configs = []
    for combo in itertools.product(*(cfg[k] for k in order)):
        d = dict(zip(order, combo))
        try:
            configs.append(OptomechConfig(**d))
        except ValueError as exc:
            raise UsageError(f"invalid grid point {d}: {exc}") from None
    records = parallel_map(optomech_record, configs, workers)
    meta = {
        "command": "optomech",
        "sweep": inner,
        "points": len(records),
        "stable": sum(r["stable"] for r in records),
        "mapping": "omega_a=Delta, omega_b=omega_m=1, G=2g, kappa_a=kappa, kappa_b=gamma_m, N_a=0, N_b=N",
    }
    return Output(records, [c for c, _ in SCHEMAS["optomech"]], meta)


def cmd_trajectory(cfg: dict, workers: int = 1) -> Output:
    try:
        params = OscillatorParams(*(cfg[k] for k in ("omega_a", "G", "kappa_a", "kappa_b", "N_a", "N_b")))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg["t_final"] < 0 or cfg["record_every"] < 1 or (cfg["dt"] is not None and cfg["dt"] <= 0):
        raise UsageError("need t_final >= 0, dt > 0 and record_every >= 1")
    A, D = build_drift(params), build_diffusion(params)
    initial = cfg["initial"]
    if initial == "thermal":
        na = params.N_a if cfg["initial_N_a"] is None else cfg["initial_N_a"]
        nb = params.N_b if cfg["initial_N_b"] is None else cfg["initial_N_b"]
        if na < 0 or nb < 0:
            raise UsageError("initial occupations must be non-negative")
        sigma0 = thermal_covariance(na, nb)
    elif initial == "steady":
        sigma0 = steady_state(params)
    elif initial == "custom":
        if cfg["initial_sigma"] is None or len(cfg["initial_sigma"]) != 16:
            raise UsageError("initial = custom needs initial_sigma with 16 entries (row-major 4x4)")
        sigma0 = np.array(cfg["initial_sigma"]).reshape(4, 4)
    else:
        raise UsageError(f"initial must be thermal, steady or custom, got {initial!r}")
    try:
        check_physical(sigma0)
    except UnphysicalStateError as exc:
        raise UsageError(f"initial state: {exc}") from None

    traj = integrate_covariance(sigma0, A, D, cfg["t_final"], dt=cfg["dt"], record_every=cfg["record_every"])
    records = []
    for t, s in zip(traj.times, traj.covariances):
        ds = entropy_rate(s, params)
        phi = entropy_flux_trace(s, params)
        pi = entropy_production_trace(s, params)
        records.append({"t": t, "S": wigner_shannon_entropy(s), "dS_dt": ds, "phi": phi, "pi": pi, "residual": ds - phi - pi})
    meta = {"command": "trajectory", "initial": initial, "points": len(records), **params.as_dict()}
    if is_stable(A):
        sigma_s = steady_state(params)
        meta["pi_s"] = entropy_production_trace(sigma_s, params)
    return Output(records, [c for c, _ in SCHEMAS["trajectory"]], meta)


COMMANDS = {"sweep": cmd_sweep, "random": cmd_random, "optomech": cmd_optomech, "trajectory": cmd_trajectory}


# --- writers ---------------------------------------------------------------


def format_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


def render_csv(records: list[dict], columns: list[str], metadata: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# units: {UNITS}\n")
    for k, v in metadata.items():
        val = json.dumps(_json_value(v), sort_keys=True) if isinstance(v, (dict, list)) else format_cell(v)
        buf.write(f"# {k}: {val}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([format_cell(rec[c]) for c in columns])
    return buf.getvalue()


def render_json(out: Output) -> str:
    doc = {
        "metadata": _json_value({"units": UNITS, **out.metadata}),
        "columns": out.columns,
        "records": [_json_value({c: r[c] for c in out.columns}) for r in out.records],
    }
    if out.curves is not None:
        doc["curves"] = [_json_value(c) for c in out.curves]
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def curves_path(out_path: str | None, explicit: str | None) -> str | None:
    if explicit:
        return explicit
    if out_path is None or out_path == "-":
        return None
    p = Path(out_path)
    return str(p.with_name(p.stem + ".curves" + (p.suffix or ".csv")))


# --- entry point ----------------------------------------------------------


COMMAND_HELP = {
    "sweep": "steady-state quantities on a parameter grid",
    "random": "uniformly sampled steady states and extremal curves",
    "optomech": "optomechanical detuning or coupling sweep",
    "trajectory": "covariance relaxation in time",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irrcorr",
        description="Entropy production and correlations of two coupled damped oscillators.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=COMMAND_HELP[name])
        p.add_argument("--config", help="key = value config file, or the name of a shipped recipe")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a config key")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1, help="process pool size")
        p.add_argument("--schema", action="store_true", help="print the column schema and exit")
        if name == "random":
            p.add_argument("--seed", type=int, help="PRNG seed (unsigned 64-bit)")
            p.add_argument("--curves-out", help="CSV file for bound curves (default: <out>.curves.csv)")
    return parser


def _schema_text(command: str) -> str:
    names = [command] + (["random-curves"] if command == "random" else [])
    lines = []
    for name in names:
        lines.append(f"[{name}]")
        lines.extend(f"{i}. {col}: {desc}" for i, (col, desc) in enumerate(SCHEMAS[name], 1))
    lines.append(f"units: {UNITS}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.schema:
        sys.stdout.write(_schema_text(args.command))
        return EXIT_OK
    try:
        raw = load_config(args.config) if args.config else {}
        for item in args.set:
            if "=" not in item:
                raise UsageError(f"--set expects KEY=VALUE, got {item!r}")
            k, v = item.split("=", 1)
            raw[k.strip()] = v.strip()
        if getattr(args, "seed", None) is not None:
            raw["seed"] = str(args.seed)
        if args.workers < 1:
            raise UsageError("--workers must be >= 1")
        cfg = resolve_config(args.command, raw)
        out = COMMANDS[args.command](cfg, workers=args.workers)
    except UsageError as exc:
        print(f"irrcorr: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"irrcorr: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (StabilityError, IntegrationError, DiscordOptimizationError, np.linalg.LinAlgError, FloatingPointError, RuntimeError) as exc:
        print(f"irrcorr: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"irrcorr: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.format == "json":
            _write(args.out, render_json(out))
        else:
            _write(args.out, render_csv(out.records, out.columns, out.metadata))
            if out.curves is not None:
                cpath = curves_path(args.out, getattr(args, "curves_out", None))
                if cpath is not None:
                    cols = [c for c, _ in SCHEMAS["random-curves"]]
                    _write(cpath, render_csv(out.curves, cols, {"curves_truncated": out.metadata["curves_truncated"]}))
    except OSError as exc:
        print(f"irrcorr: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
