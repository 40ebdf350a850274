"""Relative throat-radius sensitivity and the scenarios built on it."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

from scipy import optimize

from . import metrology, spacetime
from .errors import InvalidArgument, NoSignalError, NumericError, RegimeError, WormholeMetrologyError

PARSEC = 3.0857e16  # m

NOISE_MODELS = ("as-printed", "fisher-derived")
INFORMATION = ("qfi", "homodyne-fi")
SWEEP_AXES = ("n_photons", "L", "r1_over_b0", "eta", "n_T")


@dataclass(frozen=True)
class SensitivityInput:
    """Everything the sensitivity formulas depend on.

    ``n_photons`` is a mean photon number; when ``photon_rate`` is true it is
    read as photons per second and sensitivities carry units of Hz^-1/2.
    """

    scenario: spacetime.WormholeScenario
    n_photons: float
    eta: float = 1.0
    n_T: float = 0.0
    noise_model: str = "as-printed"
    information: str = "qfi"
    photon_rate: bool = True
    override_regime: bool = False
    thresholds: dict | None = None

    def __post_init__(self):
        if not (math.isfinite(self.n_photons) and self.n_photons > 0):
            raise InvalidArgument(f"n_photons must be positive, got {self.n_photons!r}")
        if not 0 < self.eta <= 1:
            raise InvalidArgument(f"eta must lie in (0, 1], got {self.eta!r}")
        if not (math.isfinite(self.n_T) and self.n_T >= 0):
            raise InvalidArgument(f"n_T must be >= 0, got {self.n_T!r}")
        if self.noise_model not in NOISE_MODELS:
            raise InvalidArgument(f"noise_model must be one of {NOISE_MODELS}")
        if self.information not in INFORMATION:
            raise InvalidArgument(f"information must be one of {INFORMATION}")

    @property
    def unit(self):
        return "Hz^-1/2" if self.photon_rate else "1"

    def with_ratio(self, r1_over_b0):
        """Same input with ``b0`` moved so that ``r1/b0`` equals the given ratio."""
        sc = self.scenario
        return replace(self, scenario=replace(sc, b0=sc.r1 / r1_over_b0))

    def echo(self):
        d = asdict(self)
        d["scenario"] = asdict(self.scenario)
        return d


def noise_factor(eta, n_T, noise_model):
    """Multiplier applied to the noise-free sensitivity.

    ``as-printed`` multiplies by ``eta/(1 + 2 n_T)``. ``fisher-derived`` uses
    ``sqrt((1 + 2 n_T)/eta)``, which follows from scaling the Fisher
    information by ``eta`` and by ``1/(1 + 2 n_T)``.
    """
    if noise_model == "as-printed":
        return eta / (1 + 2 * n_T)
    if noise_model == "fisher-derived":
        return math.sqrt((1 + 2 * n_T) / eta)
    raise InvalidArgument(f"unknown noise model {noise_model!r}")


def relative_sensitivity(inp):
    """Relative throat-radius error ``Delta b0 / b0``.

    ``(wavelength / 4 pi L) (r1/b0)^2 (r1/L) / sqrt(n)``, divided by
    ``sqrt(cos theta)`` for homodyne detection, times the noise factor.
    ``cos theta`` is taken from the phase folded modulo pi.
    """
    sc = inp.scenario
    if sc.b0 == 0:
        raise NoSignalError("b0 = 0: the phase carries no throat-radius signal")
    spacetime._enforce_regime(sc, inp.override_regime, inp.thresholds)
    value = (sc.wavelength / (4 * math.pi * sc.L)) * (sc.r1 / sc.b0) ** 2 * (sc.r1 / sc.L)
    value /= math.sqrt(inp.n_photons)
    if inp.information == "homodyne-fi":
        phase = spacetime.wormhole_phase(sc, override_regime=True)
        c = math.cos(phase.residual)
        if not c > 0:
            raise NumericError(f"cos(theta) = {c!r} leaves the homodyne formula undefined")
        value /= math.sqrt(c)
    return value * noise_factor(inp.eta, inp.n_T, inp.noise_model)


def sensitivity_via_chain_rule(inp):
    """``Delta b0 / b0`` from the coherent QFI reparametrized to ``b0``.

    Independent of :func:`relative_sensitivity`; ignores ``eta``, ``n_T`` and
    ``information`` (it is the noise-free QFI bound).
    """
    sc = inp.scenario
    if sc.b0 == 0:
        raise NoSignalError("b0 = 0: zero derivative of the phase")
    slope = spacetime.dtheta_db0(sc, inp.override_regime, inp.thresholds)
    fisher_b0 = metrology.reparametrize_fisher(metrology.qfi_coherent(inp.n_photons), slope)
    return metrology.cramer_rao(fisher_b0) / sc.b0


@dataclass
class CurveData:
    axis_name: str
    axis_values: list
    columns: dict
    metadata: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    errors: list = field(default_factory=list, repr=False)

    @property
    def values(self):
        return next(iter(self.columns.values()), [])


def _at_axis(inp, axis, value):
    sc = inp.scenario
    if axis == "n_photons":
        return replace(inp, n_photons=value)
    if axis == "eta":
        return replace(inp, eta=value)
    if axis == "n_T":
        return replace(inp, n_T=value)
    if axis == "r1_over_b0":
        return inp.with_ratio(value)
    if axis == "L":
        # hold r1/L and r1/b0 fixed
        scale = value / sc.L
        return replace(inp, scenario=replace(sc, L=value, r1=sc.r1 * scale, b0=sc.b0 * scale))
    raise InvalidArgument(f"axis must be one of {SWEEP_AXES}, got {axis!r}")


def sweep(inp, axis, values, variants=None):
    """Evaluate the sensitivity along one axis.

    ``variants`` maps column names to keyword overrides of the input, e.g.
    ``{"qfi": {"information": "qfi"}}``; by default one column named after
    the input's information kind. Failing points become ``None`` and are
    listed in ``failures`` as ``(index, column, message)``.
    """
    if axis not in SWEEP_AXES:
        raise InvalidArgument(f"axis must be one of {SWEEP_AXES}, got {axis!r}")
    if variants is None:
        variants = {inp.information: {}}
    values = [float(v) for v in values]
    columns = {name: [] for name in variants}
    failures, errors = [], []
    for i, v in enumerate(values):
        for name, overrides in variants.items():
            try:
                point = _at_axis(replace(inp, **overrides), axis, v)
                columns[name].append(relative_sensitivity(point))
            except WormholeMetrologyError as exc:
                columns[name].append(None)
                failures.append((i, name, str(exc)))
                errors.append(exc)
    meta = {"axis": axis, "unit": inp.unit, "input": inp.echo(), "variants": variants}
    return CurveData(axis, values, columns, meta, failures, errors)


@dataclass(frozen=True)
class ThresholdResult:
    r1_over_b0: float
    b0_min: float
    r1: float
    sensitivity: float
    method: str


def max_distance_ratio(inp, tolerance):
    """Largest ``r1/b0`` whose relative sensitivity stays within ``tolerance``.

    ``r1`` and ``L`` are held fixed. The QFI formula is inverted in closed form
    (sensitivity scales as the squared ratio); the homodyne variant is solved
    by bisection on ``log10(r1/b0)`` after expanding a bracket around the
    closed-form guess by factors of 10.
    """
    if not tolerance > 0:
        raise InvalidArgument(f"tolerance must be positive, got {tolerance!r}")
    if math.isinf(tolerance):
        return ThresholdResult(math.inf, 0.0, inp.scenario.r1, math.inf, "limit")
    sc = inp.scenario
    # the current b0 only anchors the scaling; any positive ratio works
    current = sc.r1 / sc.b0 if sc.b0 > 0 else 1e6
    qfi_inp = replace(inp.with_ratio(current), information="qfi", override_regime=True)
    guess = current * math.sqrt(tolerance / relative_sensitivity(qfi_inp))
    if inp.information == "qfi":
        ratio, method = guess, "closed-form"
    else:
        def excess(log_ratio):
            return math.log(relative_sensitivity(replace(inp.with_ratio(10**log_ratio), override_regime=True)) / tolerance)

        lo = hi = math.log10(guess)
        for _ in range(60):
            if excess(lo) < 0:
                break
            lo -= 1
        for _ in range(60):
            if excess(hi) > 0:
                break
            hi += 1
        if not excess(lo) < 0 < excess(hi):
            raise NumericError("could not bracket the detection threshold")
        log_ratio = optimize.bisect(excess, lo, hi, xtol=1e-14, maxiter=80)
        ratio, method = 10**log_ratio, "bisection"
    solved = inp.with_ratio(ratio)
    report = spacetime.regime_check(solved.scenario, inp.thresholds)
    if not report.ok and not inp.override_regime:
        raise RegimeError(
            f"threshold r1/b0={ratio:.6g} falls outside the quasiflat regime: {report.describe()}",
            report,
        )
    return ThresholdResult(
        r1_over_b0=ratio,
        b0_min=sc.r1 / ratio,
        r1=sc.r1,
        sensitivity=relative_sensitivity(replace(solved, override_regime=True)),
        method=method,
    )


def mimicker_distance(b0, delta_theta_min, L, wavelength):
    """Largest ``r1`` (m) at which a throat ``b0`` still shifts the phase by ``delta_theta_min``."""
    for name, v in (("b0", b0), ("delta_theta_min", delta_theta_min), ("L", L), ("wavelength", wavelength)):
        if not v > 0:
            raise InvalidArgument(f"{name} must be positive, got {v!r}")
    return (math.pi * (L * b0) ** 2 / (wavelength * delta_theta_min)) ** (1 / 3)
