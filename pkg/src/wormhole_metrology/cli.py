"""``wormhole-metrology`` command-line front end.

Exit codes: 0 success, 2 parse/argument error, 3 regime violation,
4 numeric failure.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import asdict

import numpy as np

from . import __version__, metrology, sensitivity, spacetime
from .config import COMMANDS, FIELD_PARSERS, PARSEC, PRESETS, build_config, coerce, read_config_file
from .errors import DomainError, InvalidArgument, RegimeError, WormholeMetrologyError
from .gaussian import ProbeSpec

EXIT_OK, EXIT_PARSE, EXIT_REGIME, EXIT_NUMERIC = 0, 2, 3, 4


class Table:
    """Column names, rows and a metadata block, ready to serialize."""

    def __init__(self, columns, rows, meta):
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]
        self.meta = meta
        self.warnings = 0

    def to_csv(self):
        out = io.StringIO()
        for key, value in self.meta.items():
            text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
            out.write(f"# {key}: {text}\n")
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
        return out.getvalue()

    def to_json(self):
        doc = {"meta": self.meta, "columns": self.columns, "rows": self.rows}
        return json.dumps(doc, indent=1, sort_keys=False, allow_nan=False) + "\n"


def _fmt(value):
    if value is None:
        return "nan"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _photon_grid(cfg):
    return [float(v) for v in np.logspace(math.log10(cfg.n_min), math.log10(cfg.n_max), cfg.n_points)]


def _input(cfg, L=None, **overrides):
    if L is None:
        scenario = spacetime.WormholeScenario(cfg.resolved_b0, cfg.resolved_r1, cfg.L, cfg.wavelength)
    else:
        scenario = spacetime.WormholeScenario.from_ratios(cfg.wavelength, L, cfg.r1_over_L, cfg.r1_over_b0)
    params = dict(
        scenario=scenario,
        n_photons=cfg.n_photons,
        eta=cfg.eta,
        n_T=cfg.n_T,
        noise_model=cfg.noise_model,
        information=cfg.information,
        override_regime=cfg.override_regime,
    )
    params.update(overrides)
    return sensitivity.SensitivityInput(**params)


def _curves_to_table(curves, cfg, column_names):
    axis = curves[0].axis_values
    columns = [curves[0].axis_name]
    cols = []
    for curve, names in zip(curves, column_names):
        for key, name in names.items():
            columns.append(name)
            cols.append(curve.columns[key])
    rows = [[axis[i]] + [c[i] for c in cols] for i in range(len(axis))]
    failures = sum(len(c.failures) for c in curves)
    if cols and failures == len(cols) * len(axis):
        # nothing to plot: report the first point's error with its category
        raise next(e for c in curves for e in c.errors)
    table = Table(columns, rows, _meta(cfg, unit=curves[0].metadata["unit"], failed_points=failures))
    table.warnings = failures
    return table


def _figure_table(cfg):
    grid = _photon_grid(cfg)
    if cfg.command == "figure4":
        inp = _input(cfg, L=cfg.L, information="homodyne-fi", eta=1.0, n_T=0.0)
        variants = {"noise_free": {}}
        for n_T in cfg.n_T_grid or (cfg.n_T,):
            tag = format(n_T, "g")
            variants[f"as_printed_nT{tag}"] = dict(eta=cfg.eta, n_T=n_T, noise_model="as-printed")
            variants[f"fisher_derived_nT{tag}"] = dict(eta=cfg.eta, n_T=n_T, noise_model="fisher-derived")
        curve = sensitivity.sweep(inp, "n_photons", grid, variants)
        return _curves_to_table([curve], cfg, [{k: k for k in variants}])
    variants = {"qfi": {"information": "qfi"}, "homodyne-fi": {"information": "homodyne-fi"}}
    curves = [sensitivity.sweep(_input(cfg, L=cfg.L), "n_photons", grid, variants)]
    names = [{"qfi": "qfi_sensitivity", "homodyne-fi": "fi_sensitivity"}]
    if cfg.L2 is not None:
        curves.append(sensitivity.sweep(_input(cfg, L=cfg.L2), "n_photons", grid, variants))
        names.append({"qfi": "qfi_sensitivity_L2", "homodyne-fi": "fi_sensitivity_L2"})
    return _curves_to_table(curves, cfg, names)


def _sweep_table(cfg):
    inp = _input(cfg)
    if cfg.both:
        variants = {"qfi": {"information": "qfi"}, "homodyne-fi": {"information": "homodyne-fi"}}
    else:
        variants = {cfg.information: {}}
    values = cfg.values or tuple(_photon_grid(cfg))
    curve = sensitivity.sweep(inp, cfg.axis, values, variants)
    return _curves_to_table([curve], cfg, [{k: k.replace("-", "_") for k in variants}])


def _mc_table(cfg):
    probe = ProbeSpec(alpha=cfg.alpha, r=cfg.r, n_T=cfg.n_T, eta=cfg.eta)
    report = metrology.mc_estimation_experiment(
        probe, cfg.theta, cfg.samples, cfg.trials, cfg.seed, threads=cfg.threads
    )
    d = report.as_dict()
    return Table(list(d), [list(d.values())], _meta(cfg))


def _threshold_table(cfg):
    res = sensitivity.max_distance_ratio(_input(cfg), cfg.tolerance)
    d = asdict(res)
    return Table(list(d), [list(d.values())], _meta(cfg, unit="Hz^-1/2"))


def _mimicker_table(cfg):
    b0 = cfg.resolved_b0
    r1 = sensitivity.mimicker_distance(b0, cfg.delta_theta, cfg.L, cfg.wavelength)
    curvature = spacetime.detectable_curvature(cfg.delta_theta, cfg.L, cfg.wavelength)
    cols = ["b0_m", "L_m", "delta_theta_rad", "r1_m", "r1_pc", "r1_upc", "pi_b0sq_over_r1cubed_per_m"]
    row = [b0, cfg.L, cfg.delta_theta, r1, r1 / PARSEC, r1 / PARSEC * 1e6, curvature]
    return Table(cols, [row], _meta(cfg, parsec_m=PARSEC))


def _validate_table(cfg):
    sc = spacetime.WormholeScenario(cfg.resolved_b0, cfg.resolved_r1, cfg.L, cfg.wavelength)
    report = spacetime.regime_check(sc)
    rows = [[k, v, report.thresholds[k], v <= report.thresholds[k]] for k, v in report.ratios.items()]
    table = Table(["ratio", "value", "threshold", "ok"], rows, _meta(cfg, ok=report.ok))
    if not report.ok and not cfg.override_regime:
        raise RegimeError(f"scenario outside the quasiflat regime: {report.describe()}", report)
    return table


def _meta(cfg, **extra):
    meta = {"artifact": "wormhole-metrology", "version": __version__, "command": cfg.command,
            "seed": cfg.seed}
    meta.update(extra)
    meta["config"] = cfg.to_dict()
    return meta


HANDLERS = {
    "figure2": _figure_table,
    "figure3": _figure_table,
    "figure4": _figure_table,
    "sweep": _sweep_table,
    "mc": _mc_table,
    "threshold": _threshold_table,
    "mimicker": _mimicker_table,
    "validate": _validate_table,
}


def run(cfg, stdout=None):
    """Execute a validated :class:`RunConfig` and write its output.

    Returns the rendered text; writes it to ``cfg.output_path`` or ``stdout``.
    """
    table = HANDLERS[cfg.command](cfg)
    text = table.to_csv() if cfg.format == "csv" else table.to_json()
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        (stdout or sys.stdout).write(text)
    if table.warnings:
        print(f"warning: {table.warnings} sweep point(s) failed and are marked nan", file=sys.stderr)
    return text


def build_parser():
    p = argparse.ArgumentParser(
        prog="wormhole-metrology",
        description="Homodyne phase-estimation sensitivity to an Ellis wormhole throat.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--preset", choices=sorted(PRESETS), help="start from a named parameter set")
    p.add_argument("--config", metavar="FILE", help="key = value file, or JSON output of a previous run")
    p.add_argument("--out", dest="output_path", metavar="PATH")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--seed", type=str)
    p.add_argument("--threads", type=str)
    p.add_argument("--override-regime", action="store_const", const="true", default=None)
    p.add_argument("--both", action="store_const", const="true", default=None,
                   help="sweep: emit qfi and homodyne-fi columns")
    skip = {"command", "output_path", "format", "seed", "threads", "override_regime", "both"}
    for name in FIELD_PARSERS:
        if name in skip:
            continue
        flag = "--" + name.replace("_", "-")
        aliases = [flag]
        if name == "wavelength":
            aliases.append("--lambda")
        if name == "samples":
            aliases.append("--samples-per-trial")
        p.add_argument(*aliases, dest=name, type=str, metavar="X")
    return p


def _categorize(exc):
    if isinstance(exc, (RegimeError, DomainError)):
        return "regime", EXIT_REGIME
    if isinstance(exc, InvalidArgument):
        return "parse", EXIT_PARSE
    return "numeric", EXIT_NUMERIC


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        flags = {k: v for k, v in vars(args).items()
                 if k not in ("command", "preset", "config") and v is not None}
        flag_values = coerce(flags)
        file_values = read_config_file(args.config) if args.config else {}
        file_values.pop("command", None)
        cfg = build_config(args.command, args.preset, file_values, flag_values)
        run(cfg)
    except WormholeMetrologyError as exc:
        category, code = _categorize(exc)
        print(f"error[{category}]: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"error[parse]: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
