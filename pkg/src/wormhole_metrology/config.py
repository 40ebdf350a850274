"""Run configuration: presets, unit-suffixed lengths and config files."""
from __future__ import annotations

import json
import math
import re
from dataclasses import asdict, dataclass, field, fields, replace

from .errors import InvalidArgument

PARSEC = 3.0857e16  # m

LENGTH_UNITS = {
    "nm": 1e-9,
    "um": 1e-6,
    "mm": 1e-3,
    "cm": 1e-2,
    "m": 1.0,
    "km": 1e3,
    "upc": 1e-6 * PARSEC,
    "pc": PARSEC,
}
COMMANDS = ("figure2", "figure3", "figure4", "sweep", "mc", "threshold", "mimicker", "validate")
_LENGTH_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*([a-zA-Z]*)\s*$")


def parse_length(text):
    """Meters from a number with an optional unit suffix (``"10km"``, ``"1000 nm"``)."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _LENGTH_RE.match(str(text))
    if not m:
        raise InvalidArgument(f"cannot parse length {text!r}")
    number, unit = m.groups()
    unit = unit or "m"
    if unit not in LENGTH_UNITS:
        raise InvalidArgument(f"unknown length unit {unit!r}; known: {', '.join(LENGTH_UNITS)}")
    try:
        return float(number) * LENGTH_UNITS[unit]
    except ValueError:
        raise InvalidArgument(f"cannot parse length {text!r}") from None


def parse_float(text):
    try:
        return float(text)
    except (TypeError, ValueError):
        raise InvalidArgument(f"expected a number, got {text!r}") from None


def parse_int(text):
    if isinstance(text, float) and text.is_integer():
        return int(text)
    try:
        return int(str(text), 0)
    except ValueError:
        raise InvalidArgument(f"expected an integer, got {text!r}") from None


def parse_bool(text):
    if isinstance(text, bool):
        return text
    s = str(text).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise InvalidArgument(f"expected a boolean, got {text!r}")


def parse_str(text):
    return str(text)


def _list_of(item):
    def parse(text):
        if isinstance(text, (list, tuple)):
            return tuple(item(t) for t in text)
        parts = [p for p in str(text).split(",") if p.strip()]
        return tuple(item(p) for p in parts)
    return parse


def _optional(parse):
    def wrapped(text):
        if text is None or (isinstance(text, str) and text.strip().lower() in ("", "none", "null")):
            return None
        return parse(text)
    return wrapped


@dataclass(frozen=True)
class RunConfig:
    command: str = "figure2"
    # scenario (meters); explicit r1/b0 win over the ratios
    wavelength: float = 1e-6
    L: float = 1e9
    L2: float | None = None
    r1_over_L: float = 1e2
    r1_over_b0: float = 1e11
    r1: float | None = None
    b0: float | None = None
    # photon budget and noise
    n_photons: float = 1e22
    n_min: float = 1e18
    n_max: float = 1e22
    n_points: int = 41
    eta: float = 1.0
    n_T: float = 0.0
    n_T_grid: tuple = ()
    noise_model: str = "as-printed"
    information: str = "qfi"
    # sweep
    axis: str = "n_photons"
    values: tuple = ()
    both: bool = False
    # Monte Carlo
    alpha: float = 10.0
    r: float = 0.0
    theta: float = 0.0
    samples: int = 10_000
    trials: int = 1_000
    # threshold and mimicker
    tolerance: float = 0.1
    delta_theta: float = 1e-10
    # execution
    seed: int = 0
    threads: int = 1
    override_regime: bool = False
    format: str = "csv"
    output_path: str | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise InvalidArgument(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise InvalidArgument(f"format must be csv or json, got {self.format!r}")
        for name in ("wavelength", "L", "r1_over_L", "r1_over_b0", "n_photons", "n_min", "n_max",
                     "tolerance", "delta_theta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidArgument(f"{name} must be a positive finite number, got {v!r}")
        if self.n_points < 1 or self.threads < 1 or self.samples < 1 or self.trials < 1:
            raise InvalidArgument("n_points, threads, samples and trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidArgument("seed must be a 64-bit unsigned integer")
        return self

    @property
    def resolved_r1(self):
        return self.r1 if self.r1 is not None else self.r1_over_L * self.L

    @property
    def resolved_b0(self):
        return self.b0 if self.b0 is not None else self.resolved_r1 / self.r1_over_b0

    def to_dict(self):
        """Parameter echo for output headers; the output path is not a parameter."""
        d = asdict(self)
        del d["output_path"]
        for k, v in d.items():
            if isinstance(v, tuple):
                d[k] = list(v)
        return d


FIELD_PARSERS = {
    "command": parse_str,
    "wavelength": parse_length,
    "L": parse_length,
    "L2": _optional(parse_length),
    "r1_over_L": parse_float,
    "r1_over_b0": parse_float,
    "r1": _optional(parse_length),
    "b0": _optional(parse_length),
    "n_photons": parse_float,
    "n_min": parse_float,
    "n_max": parse_float,
    "n_points": parse_int,
    "eta": parse_float,
    "n_T": parse_float,
    "n_T_grid": _list_of(parse_float),
    "noise_model": parse_str,
    "information": parse_str,
    "axis": parse_str,
    "values": _list_of(parse_length),
    "both": parse_bool,
    "alpha": parse_float,
    "r": parse_float,
    "theta": parse_float,
    "samples": parse_int,
    "trials": parse_int,
    "tolerance": parse_float,
    "delta_theta": parse_float,
    "seed": parse_int,
    "threads": parse_int,
    "override_regime": parse_bool,
    "format": parse_str,
    "output_path": _optional(parse_str),
}
assert set(FIELD_PARSERS) == {f.name for f in fields(RunConfig)}


def coerce(values):
    """Parse a mapping of raw values; unknown keys are rejected."""
    out = {}
    for key, raw in values.items():
        key = key.replace("-", "_")
        if key not in FIELD_PARSERS:
            raise InvalidArgument(f"unknown configuration key {key!r}")
        out[key] = FIELD_PARSERS[key](raw)
    return out


# Published parameter sets for the figure presets and the
# LIGO/LISA baselines; lambda = 10^3 nm everywhere.
PRESETS = {
    # figure2: r1/b0 = 1e11, r1/L = 1e2, L in the millions of km
    "figure2": dict(command="figure2", wavelength=1e-6, L=1e9, r1_over_L=1e2, r1_over_b0=1e11,
                    n_min=1e18, n_max=1e22),
    # figure3: r1/b0 = 1e5, r1/L = 1e8, L in the km range
    "figure3": dict(command="figure3", wavelength=1e-6, L=1e3, r1_over_L=1e8, r1_over_b0=1e5,
                    n_min=1e18, n_max=1e22),
    # figure4: r1/b0 = 1e7, r1/L = 1e5, L = 1e6 m, eta = 0.62; n_T values are our choice
    "figure4": dict(command="figure4", wavelength=1e-6, L=1e6, r1_over_L=1e5, r1_over_b0=1e7,
                    eta=0.62, n_T_grid=(0.0, 1.0, 10.0), n_min=1e18, n_max=1e22,
                    information="homodyne-fi"),
    # km-scale arms with the figure3 ratios; tolerance 0.1 Hz^-1/2
    "ligo": dict(command="threshold", wavelength=1e-6, L=1e3, r1_over_L=1e8, r1_over_b0=1e5,
                 n_photons=1e22, tolerance=0.1),
    # million-km arms with the figure2 ratios; tolerance 0.1 Hz^-1/2
    "lisa": dict(command="threshold", wavelength=1e-6, L=1e9, r1_over_L=1e2, r1_over_b0=1e11,
                 n_photons=1e22, tolerance=0.1),
    # black-hole mimicker: b0 ~ 200 km, smallest resolved phase 1e-10 rad
    "mimicker-ligo": dict(command="mimicker", wavelength=1e-6, L=1e3, b0=2e5, delta_theta=1e-10),
    "mimicker-lisa": dict(command="mimicker", wavelength=1e-6, L=1e9, b0=2e5, delta_theta=1e-10),
}


def preset(name):
    if name not in PRESETS:
        raise InvalidArgument(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return RunConfig(**PRESETS[name])


def read_config_file(path):
    """Load a flat ``key = value`` file, or the JSON written by a previous run."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidArgument(f"{path}: invalid JSON: {exc}") from None
        raw = doc.get("meta", {}).get("config", doc)
        return coerce(raw)
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else (":" if ":" in line else None)
        if sep is None:
            raise InvalidArgument(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split(sep, 1))
        raw[key] = value
    return coerce(raw)


def build_config(command, preset_name=None, file_values=None, flag_values=None):
    """Defaults, then preset, then config file, then flags."""
    base = preset(preset_name) if preset_name else (
        preset(command) if command in ("figure2", "figure3", "figure4") else RunConfig()
    )
    merged = dict(file_values or {})
    merged.update(flag_values or {})
    merged["command"] = command
    return replace(base, **merged).validate()
