"""Command-line front end.

Every subcommand reads one flat ``key = value`` config file plus
``--set key=value`` overrides; unknown keys are rejected rather than
silently ignored, and ``--help`` lists every key with its units.

Exit codes: 0 success, 1 config error, 2 partial failure (error rows or
an unconverged computation), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from ._version import __version__
from .errors import (
    ConfigError,
    CutoffRunaway,
    InsufficientPoints,
    NoConvergence,
    NonPositiveObservable,
    WindowEmpty,
)
from .meanfield_thermal import (
    ThermalPoint,
    critical_coupling_thermal,
    critical_temperature,
    landscape_grid,
    order_parameter_thermal,
)
from .meanfield_zero import critical_coupling_zero, order_parameters
from .model import ModelParams
from .scaling import ScalingCurve, collapse_quality, fit_criticality_n_scaling, fit_powerlaw
from .spectra import converge_cutoff, observables, solve_spectrum
from .sweep import (
    ALL_OBSERVABLES,
    Axis,
    EdSettings,
    SweepSpec,
    emit,
    format_value,
    read_rows_csv,
    rows_to_csv_text,
    run_sweep,
)

# key -> (type, default, help).  Energies are in units of the cavity
# frequency omega; temperatures in the same units with k_B = 1.
PHYSICS_KEYS = {
    "omega": (float, 1.0, "cavity frequency (sets the energy unit)"),
    "delta": (float, 1.0, "atomic transition frequency (units of omega)"),
    "g": (float, 0.0, "rotating-wave coupling (units of omega)"),
    "tau": (float, 1.0, "counter-rotating/rotating coupling ratio (dimensionless)"),
    "u": (float, 0.0, "Stark coupling (units of omega)"),
    "kappa": (float, 0.0, "A-square coefficient (dimensionless, >= 1 respects the sum rule)"),
    "n_atoms": (int, 1, "atom count N (positive integer)"),
}

ED_KEYS = {
    "n_max": (int, 0, "fixed photon cutoff; 0 selects the adaptive ladder"),
    "k_eigenpairs": (int, 4, "eigenpairs per parity sector"),
    "tol": (float, 1e-10, "eigensolver residual tolerance (relative)"),
    "n_max_start": (int, 16, "adaptive ladder starting cutoff"),
    "n_max_cap": (int, 1024, "adaptive ladder cap (runaway guard)"),
    "tail_tol": (float, 1e-8, "max ground-state weight in the top 10% photon levels"),
    "energy_tol": (float, 1e-8, "max ground-energy drift per ladder rung (units of omega)"),
    "dense_threshold": (int, 2000, "dimension at or below which the dense solver is used"),
}

TEMPERATURE_KEY = {
    "temperature": (float, None, "temperature (units of omega, k_B = 1)"),
}

SWEEP_KEYS = {
    **PHYSICS_KEYS,
    **TEMPERATURE_KEY,
    **ED_KEYS,
    "axis1": (str, None, "first sweep axis: one of g, U, tau, kappa, delta, T, N"),
    "axis1_start": (float, None, "first axis start value"),
    "axis1_stop": (float, None, "first axis stop value"),
    "axis1_points": (int, None, "first axis point count"),
    "axis1_values": (list, [], "explicit first-axis values (overrides start/stop/points)"),
    "axis2": (str, "", "optional second sweep axis"),
    "axis2_start": (float, 0.0, "second axis start value"),
    "axis2_stop": (float, 0.0, "second axis stop value"),
    "axis2_points": (int, 0, "second axis point count"),
    "axis2_values": (list, [], "explicit second-axis values (overrides start/stop/points)"),
    "observables": (list, [], f"comma list from: {', '.join(ALL_OBSERVABLES)}"),
    "workers": (int, 1, "parallel worker processes"),
    "output": (str, None, "output file path"),
    "format": (str, "csv", "output format: csv or json"),
}

SPECTRUM_KEYS = {**PHYSICS_KEYS, **ED_KEYS}

MEANFIELD_KEYS = {**PHYSICS_KEYS, **TEMPERATURE_KEY}

THERMAL_KEYS = {
    **PHYSICS_KEYS,
    **TEMPERATURE_KEY,
    "alpha_max": (float, 10.0, "stationarity root search upper bound (intensive amplitude)"),
}

LANDSCAPE_KEYS = {
    **PHYSICS_KEYS,
    **TEMPERATURE_KEY,
    "x_min": (float, -1.0, "real-amplitude grid start"),
    "x_max": (float, 1.0, "real-amplitude grid stop"),
    "y_min": (float, -1.0, "imaginary-amplitude grid start"),
    "y_max": (float, 1.0, "imaginary-amplitude grid stop"),
    "resolution": (int, 65, "grid points per axis (>= 32; odd keeps the origin on-grid)"),
    "output": (str, "", "optional CSV path for the grid values"),
}

SCALING_KEYS = {
    "input": (str, None, "sweep CSV to analyze"),
    "mode": (str, "powerlaw", "powerlaw | criticality | collapse"),
    "observable": (str, None, "CSV column holding the observable"),
    "control": (str, "g", "CSV column holding the control parameter"),
    "size_column": (str, "N", "CSV column holding the system size"),
    "critical_value": (float, None, "critical control value for reduced variables"),
    "beta_q": (float, None, "scaling exponent of the observable (collapse mode)"),
    "nu": (float, 1.5, "correlation-length exponent"),
    "window_lo": (float, 1e-2, "reduced-variable window lower edge"),
    "window_hi": (float, 1e-1, "reduced-variable window upper edge"),
    "output": (str, "", "optional JSON report path (default: stdout)"),
}


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        entries[key] = value.strip()
    return entries


def _convert(key: str, typ, raw: str):
    try:
        if typ is float:
            return float(raw)
        if typ is int:
            return int(raw)
        if typ is list:
            return [item.strip() for item in raw.split(",") if item.strip()]
        return raw
    except ValueError as err:
        raise ConfigError(f"key {key}: cannot parse {raw!r} as {typ.__name__}") from err


def load_settings(schema: dict, config_path: str | None, overrides: list[str]) -> dict:
    entries: dict[str, str] = {}
    if config_path:
        try:
            text = Path(config_path).read_text()
        except OSError as err:
            raise ConfigError(f"cannot read config {config_path}: {err}") from err
        entries.update(parse_config_text(text, source=config_path))
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        entries[key.strip()] = value.strip()

    unknown = sorted(set(entries) - set(schema))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    settings = {}
    for key, (typ, default, _help) in schema.items():
        settings[key] = _convert(key, typ, entries[key]) if key in entries else default
    return settings


def _require(settings: dict, keys: list[str]):
    missing = [k for k in keys if settings[k] in (None, "")]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")


def _params_from(settings: dict) -> ModelParams:
    try:
        return ModelParams(
            omega=settings["omega"],
            delta=settings["delta"],
            g=settings["g"],
            tau=settings["tau"],
            u=settings["u"],
            kappa=settings["kappa"],
            n_atoms=settings["n_atoms"],
        )
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _schema_epilog(schema: dict) -> str:
    lines = ["config keys (key = value per line, '#' comments):"]
    for key, (typ, default, help_text) in schema.items():
        typename = {float: "float", int: "int", str: "str", list: "list"}[typ]
        shown = "required" if default is None else f"default {default!r}"
        lines.append(f"  {key:<16} {typename:<6} {shown:<22} {help_text}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dickestark",
        description="Superradiant phase transition toolkit for the anisotropic "
        "Dicke model with Stark and A-square couplings.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, schema, help_text in (
        ("spectrum", SPECTRUM_KEYS, "diagonalize one parameter point and print observables"),
        ("sweep", SWEEP_KEYS, "run a parameter-grid sweep and write CSV/JSON"),
        ("meanfield", MEANFIELD_KEYS, "ground-state order parameters and critical coupling"),
        ("thermal", THERMAL_KEYS, "thermal critical coupling, critical temperature, order parameter"),
        ("landscape", LANDSCAPE_KEYS, "free-energy landscape over complex amplitude"),
        ("scaling", SCALING_KEYS, "power-law fits and collapse scores from a sweep CSV"),
    ):
        p = sub.add_parser(
            name,
            help=help_text,
            epilog=_schema_epilog(schema),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        p.add_argument("config", nargs="?", help="path to a key = value config file")
        p.add_argument(
            "--set",
            dest="overrides",
            action="append",
            metavar="KEY=VALUE",
            help="override one config key (repeatable)",
        )
    return parser


def _print_kv(name: str, value):
    print(f"{name} = {format_value(value) if value is not None else 'none'}")


def cmd_spectrum(settings: dict) -> int:
    params = _params_from(settings)
    if settings["n_max"] > 0:
        res = solve_spectrum(
            params,
            settings["n_max"],
            k=settings["k_eigenpairs"],
            tol=settings["tol"],
            dense_threshold=settings["dense_threshold"],
        )
    else:
        try:
            res = converge_cutoff(
                params,
                k=settings["k_eigenpairs"],
                tail_tol=settings["tail_tol"],
                energy_tol=settings["energy_tol"],
                n_max_start=settings["n_max_start"],
                n_max_cap=settings["n_max_cap"],
                tol=settings["tol"],
                dense_threshold=settings["dense_threshold"],
            )
        except (CutoffRunaway, NoConvergence) as err:
            print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
            return 2
    obs = observables(res, params)
    for name in ("e0", "epsilon", "nph_total", "nph_density", "delta_x", "jz_density"):
        _print_kv(name, getattr(obs, name))
    _print_kv("n_max_used", res.n_max_used)
    _print_kv("residual_max", float(np.max(res.residuals)))
    return 0


def cmd_meanfield(settings: dict) -> int:
    params = _params_from(settings)
    crit = critical_coupling_zero(params)
    if crit.exists:
        print(f"g_c0 = {crit.value:.4f}  ({format_value(crit.value)})")
    else:
        print(f"g_c0 = none  ({crit.reason})")
    sol = order_parameters(params)
    _print_kv("alpha", sol.alpha)
    _print_kv("varsigma", sol.varsigma)
    _print_kv("energy_per_atom", sol.energy_per_atom)
    print(f"phase = {sol.phase}")
    temperature = settings["temperature"]
    if temperature is not None and temperature > 0:
        thermal = critical_coupling_thermal(ThermalPoint(params, temperature))
        if thermal.value is not None:
            print(f"g_c = {thermal.value:.4f}  ({format_value(thermal.value)})")
        elif thermal.formula_value is not None:
            print(
                f"g_c = none  (formula value {thermal.formula_value:.4f}, "
                f"status {thermal.status}: {thermal.reason})"
            )
        else:
            print(f"g_c = none  (status {thermal.status}: {thermal.reason})")
    return 0


def cmd_thermal(settings: dict) -> int:
    _require(settings, ["temperature"])
    params = _params_from(settings)
    point = ThermalPoint(params, settings["temperature"])
    crit = critical_coupling_thermal(point)
    if crit.value is not None:
        print(f"g_c = {crit.value:.4f}  ({format_value(crit.value)})")
    elif crit.formula_value is not None:
        print(
            f"g_c = none  (formula value {crit.formula_value:.4f}, "
            f"status {crit.status}: {crit.reason})"
        )
    else:
        print(f"g_c = none  (status {crit.status}: {crit.reason})")
    t_c = critical_temperature(params)
    if t_c.value is not None:
        print(f"t_c = {t_c.value:.4f}  ({format_value(t_c.value)})")
    else:
        print(f"t_c = none  ({t_c.reason})")
    sol = order_parameter_thermal(point, alpha_max=settings["alpha_max"])
    _print_kv("alpha_intensive", sol.alpha_intensive)
    _print_kv("free_energy_per_atom", sol.free_energy_per_atom)
    print(f"phase = {sol.phase}")
    return 0


def cmd_landscape(settings: dict) -> int:
    _require(settings, ["temperature"])
    params = _params_from(settings)
    point = ThermalPoint(params, settings["temperature"])
    try:
        res = landscape_grid(
            point,
            (settings["x_min"], settings["x_max"]),
            (settings["y_min"], settings["y_max"]),
            settings["resolution"],
        )
    except ValueError as err:
        raise ConfigError(str(err)) from err
    sol = order_parameter_thermal(point)
    print(f"minima = {len(res.minima)}")
    for x, y, f in res.minima:
        print(f"  minimum at ({format_value(x)}, {format_value(y)}) f_rel = {format_value(f)}")
    print(f"maxima = {len(res.maxima)}")
    for x, y, f in res.maxima:
        print(f"  maximum at ({format_value(x)}, {format_value(y)}) f_rel = {format_value(f)}")
    print(f"phase = {sol.phase}")
    if settings["output"]:
        rows = [
            {"x": x, "y": y, "f_rel": res.values[i, j]}
            for i, x in enumerate(res.x)
            for j, y in enumerate(res.y)
        ]
        text = rows_to_csv_text(["x", "y", "f_rel"], rows)
        Path(settings["output"]).write_text(text)
        print(f"wrote {settings['output']}")
    return 0


def _axis_from(settings: dict, which: str) -> Axis:
    name = settings[which]
    explicit = settings[f"{which}_values"]
    if explicit:
        try:
            return Axis(name, tuple(float(v) for v in explicit))
        except ValueError as err:
            raise ConfigError(f"{which}_values: {err}") from err
    for key in (f"{which}_start", f"{which}_stop"):
        if settings[key] is None:
            raise ConfigError(f"missing required keys: {key} (or {which}_values)")
    if not settings[f"{which}_points"]:
        raise ConfigError(f"missing required keys: {which}_points (or {which}_values)")
    return Axis.linspace(
        name, settings[f"{which}_start"], settings[f"{which}_stop"],
        settings[f"{which}_points"],
    )


def cmd_sweep(settings: dict) -> int:
    _require(settings, ["axis1", "output"])
    params = _params_from(settings)
    axis1 = _axis_from(settings, "axis1")
    axis2 = _axis_from(settings, "axis2") if settings["axis2"] else None
    ed = EdSettings(
        k=settings["k_eigenpairs"],
        tol=settings["tol"],
        n_max_start=settings["n_max_start"],
        n_max_cap=settings["n_max_cap"],
        tail_tol=settings["tail_tol"],
        energy_tol=settings["energy_tol"],
        dense_threshold=settings["dense_threshold"],
        n_max_fixed=settings["n_max"] if settings["n_max"] > 0 else None,
    )
    spec = SweepSpec(
        base=params,
        axis1=axis1,
        axis2=axis2,
        observables=tuple(settings["observables"]),
        temperature=settings["temperature"],
        ed=ed,
        workers=settings["workers"],
    )
    result = run_sweep(spec)
    path = emit(result, settings["format"], settings["output"])
    print(f"wrote {path} ({len(result.rows)} rows, {result.error_count} errors)")
    return 2 if result.error_count else 0


def _curves_from_csv(settings: dict) -> dict[int, ScalingCurve]:
    columns, rows = read_rows_csv(settings["input"])
    for needed in (settings["control"], settings["observable"]):
        if needed not in columns:
            raise ConfigError(f"column {needed!r} not in {settings['input']}")
    size_col = settings["size_column"] if settings["size_column"] in columns else None
    groups: dict[int, list[tuple[float, float]]] = {}
    for row in rows:
        if row.get("error"):
            continue
        control = row.get(settings["control"])
        value = row.get(settings["observable"])
        if control is None or value is None or isinstance(value, str):
            continue
        size = int(row[size_col]) if size_col else 1
        groups.setdefault(size, []).append((float(control), float(value)))
    curves = {}
    for size, pairs in groups.items():
        pairs.sort()
        controls = np.array([p[0] for p in pairs])
        values = np.array([p[1] for p in pairs])
        keep = np.concatenate([[True], np.diff(controls) > 0])
        tag = "alpha_mf" if "alpha" in settings["observable"] else (
            settings["observable"] if settings["observable"] in
            ("epsilon", "nph_density", "delta_x") else "epsilon"
        )
        curves[size] = ScalingCurve(controls[keep], values[keep], size, tag)
    if not curves:
        raise ConfigError("no usable data rows in input CSV")
    return curves


def cmd_scaling(settings: dict) -> int:
    _require(settings, ["input", "observable"])
    mode = settings["mode"]
    window = (settings["window_lo"], settings["window_hi"])
    report: dict = {"mode": mode, "observable": settings["observable"]}
    try:
        if mode == "powerlaw":
            _require(settings, ["critical_value"])
            curves = _curves_from_csv(settings)
            fits = []
            for size in sorted(curves):
                fit = fit_powerlaw(curves[size], settings["critical_value"], window)
                fits.append(
                    {
                        "size": size,
                        "exponent": fit.exponent,
                        "stderr": fit.stderr,
                        "window": list(fit.window),
                        "r_squared": fit.r_squared,
                        "n_points": fit.n_points,
                    }
                )
            report["fits"] = fits
        elif mode == "criticality":
            curves = _curves_from_csv(settings)
            pairs = []
            for size, curve in curves.items():
                if curve.values.size != 1:
                    raise ConfigError(
                        "criticality mode expects exactly one row per size "
                        f"(size {size} has {curve.values.size})"
                    )
                pairs.append((size, float(curve.values[0])))
            fit = fit_criticality_n_scaling(pairs)
            report["fit"] = {
                "exponent": fit.exponent,
                "stderr": fit.stderr,
                "window": list(fit.window),
                "r_squared": fit.r_squared,
                "n_points": fit.n_points,
            }
        elif mode == "collapse":
            _require(settings, ["critical_value", "beta_q"])
            curves = _curves_from_csv(settings)
            score = collapse_quality(
                list(curves.values()),
                settings["critical_value"],
                settings["beta_q"],
                settings["nu"],
                window,
            )
            report["score"] = score
            report["beta_q"] = settings["beta_q"]
            report["nu"] = settings["nu"]
        else:
            raise ConfigError(f"unknown scaling mode {mode!r}")
    except (InsufficientPoints, NonPositiveObservable, WindowEmpty, ValueError) as err:
        raise ConfigError(f"{type(err).__name__}: {err}") from err

    text = json.dumps(report, indent=2) + "\n"
    if settings["output"]:
        Path(settings["output"]).write_text(text)
        print(f"wrote {settings['output']}")
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "spectrum": (SPECTRUM_KEYS, cmd_spectrum),
    "sweep": (SWEEP_KEYS, cmd_sweep),
    "meanfield": (MEANFIELD_KEYS, cmd_meanfield),
    "thermal": (THERMAL_KEYS, cmd_thermal),
    "landscape": (LANDSCAPE_KEYS, cmd_landscape),
    "scaling": (SCALING_KEYS, cmd_scaling),
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    schema, handler = _COMMANDS[args.command]
    try:
        settings = load_settings(schema, args.config, args.overrides)
        return handler(settings)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
