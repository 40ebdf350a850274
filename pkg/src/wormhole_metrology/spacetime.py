"""Radial light propagation through the Ellis wormhole geometry.

The metric is ``ds^2 = -c^2 dt^2 + dr^2 / (1 - b0^2/r^2)``; the proper radial
coordinate is ``l = sqrt(r^2 - b0^2)``. All lengths are in meters.

Corrections to the propagation phase are many orders of magnitude below the
flat phase itself, so every function here returns the correction as its own
number instead of forming differences of large quantities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, InvalidArgument, RegimeError

DEFAULT_THRESHOLDS = {"b0/r1": 1e-2, "L/r1": 1e-2, "lambda/L": 1e-2}
METRIC_STRAIN_FLAG = 1e-2


@dataclass(frozen=True)
class WormholeScenario:
    """Throat radius ``b0``, emitter coordinate ``r1``, separation ``L = r2 - r1``, wavelength."""

    b0: float
    r1: float
    L: float
    wavelength: float

    def __post_init__(self):
        for name in ("b0", "r1", "L", "wavelength"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgument(f"{name} must be finite")
        if self.b0 < 0:
            raise InvalidArgument(f"b0 must be >= 0, got {self.b0!r}")
        if not self.r1 > self.b0:
            raise DomainError(f"r1={self.r1!r} must exceed the throat radius b0={self.b0!r}")
        if not self.L > 0:
            raise InvalidArgument(f"L must be positive, got {self.L!r}")
        if not self.wavelength > 0:
            raise InvalidArgument(f"wavelength must be positive, got {self.wavelength!r}")

    @property
    def r2(self):
        return self.r1 + self.L

    @classmethod
    def from_ratios(cls, wavelength, L, r1_over_L, r1_over_b0):
        r1 = r1_over_L * L
        return cls(b0=r1 / r1_over_b0, r1=r1, L=L, wavelength=wavelength)


@dataclass(frozen=True)
class RegimeReport:
    ratios: dict
    thresholds: dict = field(default_factory=lambda: dict(DEFAULT_THRESHOLDS))

    @property
    def ok(self):
        return all(self.ratios[k] <= self.thresholds[k] for k in self.ratios)

    @property
    def worst_ratio(self):
        """Name and value of the ratio closest to (or furthest past) its threshold."""
        name = max(self.ratios, key=lambda k: self.ratios[k] / self.thresholds[k])
        return name, self.ratios[name]

    def describe(self):
        parts = []
        for k, v in self.ratios.items():
            mark = "ok" if v <= self.thresholds[k] else "VIOLATED"
            parts.append(f"{k}={v:.6g} (limit {self.thresholds[k]:g}, {mark})")
        return "; ".join(parts)


@dataclass(frozen=True)
class FlatPhase:
    theta_f: float
    m: float
    on_operating_point: bool


@dataclass(frozen=True)
class WormholePhase:
    """Phase after propagation: ``theta = theta_f - delta_theta``."""

    theta_f: float
    delta_theta: float
    m: float
    on_operating_point: bool

    @property
    def theta(self):
        return self.theta_f - self.delta_theta

    @property
    def residual(self):
        """``theta`` folded into ``(-pi/2, pi/2]`` modulo pi, built from the correction."""
        frac = math.fmod(self.m, 1.0)
        offset = 0.0 if self.on_operating_point else math.pi * frac
        x = offset - self.delta_theta
        x = math.remainder(x, math.pi)
        return math.pi / 2 if x == -math.pi / 2 else x


def proper_radial_coordinate(r, b0):
    """``sqrt(r^2 - b0^2)`` on the positive branch."""
    if r < b0:
        raise DomainError(f"r={r!r} lies inside the throat radius b0={b0!r}")
    return math.sqrt((r - b0) * (r + b0))


def proper_radial_deficit(r, b0):
    """``r - sqrt(r^2 - b0^2)`` without cancellation."""
    return b0 * b0 / (proper_radial_coordinate(r, b0) + r)


def proper_length_excess(scenario):
    """``L' - L`` for propagation from ``r1`` to ``r2``.

    With ``l_i = sqrt(r_i^2 - b0^2)``, ``l2 - l1 = L (r1 + r2)/(l1 + l2)``,
    hence ``L' - L = L (d1 + d2)/(l1 + l2)`` with the deficits ``d_i = r_i - l_i``.
    """
    b0, r1, r2 = scenario.b0, scenario.r1, scenario.r2
    l1 = proper_radial_coordinate(r1, b0)
    l2 = proper_radial_coordinate(r2, b0)
    return scenario.L * (proper_radial_deficit(r1, b0) + proper_radial_deficit(r2, b0)) / (l1 + l2)


def proper_distance(scenario):
    return scenario.L + proper_length_excess(scenario)


def flat_phase(L, wavelength):
    """Flat-space phase ``2 pi L / wavelength`` and the half-wavelength count ``m``.

    The operating condition ``theta = m pi`` holds when ``m`` is an integer to
    1e-9 relative (absolute 1e-9 for ``m < 1``).
    """
    if not (L > 0 and wavelength > 0):
        raise InvalidArgument("L and wavelength must be positive")
    ratio = L / wavelength
    m = 2 * ratio
    on_point = abs(m - round(m)) <= 1e-9 * max(1.0, abs(m))
    return FlatPhase(2 * math.pi * ratio, m, on_point)


def regime_check(scenario, thresholds=None):
    ratios = {
        "b0/r1": scenario.b0 / scenario.r1,
        "L/r1": scenario.L / scenario.r1,
        "lambda/L": scenario.wavelength / scenario.L,
    }
    limits = dict(DEFAULT_THRESHOLDS)
    if thresholds:
        limits.update(thresholds)
    return RegimeReport(ratios, limits)


def _enforce_regime(scenario, override, thresholds):
    if override:
        return
    report = regime_check(scenario, thresholds)
    if not report.ok:
        raise RegimeError(f"scenario outside the quasiflat regime: {report.describe()}", report)


def phase_correction(L, wavelength, r1, b0):
    """Wormhole phase deficit ``pi L^2 b0^2 / (wavelength r1^3)``."""
    return math.pi * L * L * (b0 / r1) ** 2 / (wavelength * r1)


def wormhole_phase(scenario, override_regime=False, thresholds=None, naive_proper_length=False):
    """Propagation phase in the wormhole spacetime.

    The default model is ``theta_f (1 - b0^2 L / (2 r1^3))``. With
    ``naive_proper_length=True`` the phase is ``2 pi L' / wavelength`` using
    the exact proper length at an unchanged wavelength instead; that variant
    has the opposite sign and a different scaling and exists for comparison.
    """
    _enforce_regime(scenario, override_regime, thresholds)
    flat = flat_phase(scenario.L, scenario.wavelength)
    if naive_proper_length:
        delta = -2 * math.pi * proper_length_excess(scenario) / scenario.wavelength
    else:
        delta = phase_correction(scenario.L, scenario.wavelength, scenario.r1, scenario.b0)
    return WormholePhase(flat.theta_f, delta, flat.m, flat.on_operating_point)


def metric_perturbation(r1, b0):
    """Quasiflat ``g_rr`` perturbation ``(b0/r1)^2`` and whether it strains the regime."""
    if not r1 > b0:
        raise DomainError(f"r1={r1!r} must exceed b0={b0!r}")
    value = (b0 / r1) ** 2
    return value, value >= METRIC_STRAIN_FLAG


def dtheta_db0(scenario, override_regime=False, thresholds=None):
    """Derivative of the wormhole phase with respect to the throat radius (rad/m)."""
    _enforce_regime(scenario, override_regime, thresholds)
    r1 = scenario.r1
    return -2 * math.pi * scenario.L**2 * (scenario.b0 / r1) / (scenario.wavelength * r1 * r1)


def detectable_curvature(delta_theta, L, wavelength):
    """``pi b0^2 / r1^3`` (1/m) that produces a phase deficit ``delta_theta``."""
    return delta_theta * wavelength / (L * L)
