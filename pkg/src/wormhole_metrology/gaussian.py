"""Single-mode Gaussian states in phase space.

Quadratures are ``x = (a + a^dag)/sqrt(2)`` and ``p = (a - a^dag)/(i sqrt(2))``,
so the vacuum has covariance ``diag(1/2, 1/2)``. The phase channel
``U(theta) = exp(-i theta a^dag a)`` maps ``alpha -> alpha exp(-i theta)``,
which acts on ``(x, p)`` as::

    [[ cos(theta), sin(theta)],
     [-sin(theta), cos(theta)]]

A real displacement ``alpha >= 0`` sits on the x axis and a positive
squeezing parameter reduces the x variance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument

VACUUM_VARIANCE = 0.5


def _require_finite(name, value):
    if not math.isfinite(value):
        raise InvalidArgument(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ProbeSpec:
    """Probe parameters: displacement, squeezing, thermal occupation, efficiency."""

    alpha: float = 0.0
    r: float = 0.0
    n_T: float = 0.0
    eta: float = 1.0

    def __post_init__(self):
        _require_finite("alpha", self.alpha)
        _require_finite("r", self.r)
        if not (math.isfinite(self.n_T) and self.n_T >= 0):
            raise InvalidArgument(f"n_T must be >= 0, got {self.n_T!r}")
        if not (0 < self.eta <= 1):
            raise InvalidArgument(f"eta must lie in (0, 1], got {self.eta!r}")


@dataclass(frozen=True)
class GaussianState:
    """First and second quadrature moments of a single-mode state.

    Arrays are copied and made read-only on construction so states can be
    shared freely.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float).reshape(2)
        cov = np.array(self.cov, dtype=float).reshape(2, 2)
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise InvalidArgument("state moments must be finite")
        # symmetrize exactly; rotations leave O(ulp) asymmetry
        off = 0.5 * (cov[0, 1] + cov[1, 0])
        cov[0, 1] = cov[1, 0] = off
        if cov[0, 0] <= 0 or cov[1, 1] <= 0:
            raise InvalidArgument("covariance diagonal must be positive")
        if np.linalg.det(cov) < 0.25 - 1e-12:
            raise InvalidArgument(
                f"covariance violates the uncertainty relation: det={np.linalg.det(cov)!r}"
            )
        mean.flags.writeable = False
        cov.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def purity(self):
        return 0.5 / math.sqrt(np.linalg.det(self.cov))

    def allclose(self, other, atol=1e-12):
        return bool(
            np.allclose(self.mean, other.mean, rtol=0, atol=atol)
            and np.allclose(self.cov, other.cov, rtol=0, atol=atol)
        )


@dataclass(frozen=True)
class HomodyneDensity:
    """Normal density of a p-quadrature homodyne outcome."""

    mu: float
    sigma2: float

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise InvalidArgument(f"sigma2 must be positive, got {self.sigma2!r}")

    def pdf(self, p):
        p = np.asarray(p, dtype=float)
        return np.exp(-((p - self.mu) ** 2) / (2 * self.sigma2)) / math.sqrt(
            2 * math.pi * self.sigma2
        )


def vacuum():
    return GaussianState(np.zeros(2), np.eye(2) * VACUUM_VARIANCE)


def coherent_state(alpha):
    """Coherent state with real amplitude ``alpha``."""
    _require_finite("alpha", alpha)
    return GaussianState([math.sqrt(2) * alpha, 0.0], np.eye(2) * VACUUM_VARIANCE)


def displaced_squeezed_thermal(spec):
    """Displacement of a squeezed thermal state.

    The thermal seed has covariance ``(1 + 2 n_T)/2`` times the identity and
    squeezing rescales it to ``(1 + 2 n_T) diag(e^{-2r}, e^{2r}) / 2``. The
    efficiency ``spec.eta`` is *not* applied here; use :func:`apply_loss`.
    """
    if not isinstance(spec, ProbeSpec):
        raise InvalidArgument("expected a ProbeSpec")
    scale = (1 + 2 * spec.n_T) * VACUUM_VARIANCE
    cov = np.diag([scale * math.exp(-2 * spec.r), scale * math.exp(2 * spec.r)])
    return GaussianState([math.sqrt(2) * spec.alpha, 0.0], cov)


def rotation_matrix(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def apply_phase_shift(state, theta):
    _require_finite("theta", theta)
    rot = rotation_matrix(theta)
    return GaussianState(rot @ state.mean, rot @ state.cov @ rot.T)


def apply_loss(state, eta):
    """Pure-loss channel of transmissivity ``eta``."""
    if not (math.isfinite(eta) and 0 < eta <= 1):
        raise InvalidArgument(f"eta must lie in (0, 1], got {eta!r}")
    return GaussianState(
        math.sqrt(eta) * state.mean,
        eta * state.cov + (1 - eta) * VACUUM_VARIANCE * np.eye(2),
    )


def mean_photon_number(state):
    d, v = state.mean, state.cov
    return float(d @ d / 2 + (np.trace(v) - 1) / 2)


def photon_number_variance(state):
    # n = (x^2 + p^2 - 1)/2 with Weyl-ordered Gaussian moments
    d, v = state.mean, state.cov
    return float((np.trace(v @ v) - 0.5) / 2 + d @ v @ d)


def homodyne_p_density(state):
    return HomodyneDensity(float(state.mean[1]), float(state.cov[1, 1]))


def sample_homodyne(state, count, seed):
    """Draw ``count`` p-quadrature outcomes.

    Uses numpy's PCG64 generator seeded with ``seed``; sequences are
    reproducible per seed on a given numpy version, not bit-exact across
    platforms.
    """
    count = int(count)
    if count < 1:
        raise InvalidArgument(f"count must be >= 1, got {count}")
    dens = homodyne_p_density(state)
    rng = np.random.default_rng(seed)
    return rng.normal(dens.mu, math.sqrt(dens.sigma2), size=count)
