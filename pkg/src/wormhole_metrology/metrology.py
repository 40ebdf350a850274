"""Fisher information, Cramer-Rao bounds and homodyne phase estimation."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import gaussian
from .errors import InvalidArgument, NumericError

# trials per independently seeded block in the Monte-Carlo experiment; fixed
# so results do not depend on the worker count
MC_BLOCK = 50
_MC_CHUNK_SAMPLES = 2_000_000
_HERMITE_NODES, _HERMITE_WEIGHTS = np.polynomial.hermite_e.hermegauss(16)


def qfi_pure_gaussian(alpha, r):
    """QFI for the phase of ``D(alpha) S(r)|0>``: four times the photon-number variance."""
    return 4 * (alpha**2 * (math.cosh(r) - math.sinh(r)) ** 2
                + 2 * math.sinh(r) ** 2 * math.cosh(r) ** 2)


def qfi_coherent(n_mean):
    if not n_mean >= 0:
        raise InvalidArgument(f"mean photon number must be >= 0, got {n_mean!r}")
    return 4 * n_mean


def fi_homodyne(alpha, theta):
    """Fisher information of p-homodyne detection on a coherent state."""
    return 4 * alpha**2 * math.cos(theta) ** 2


def cramer_rao(fisher, repetitions=1):
    """Standard-deviation lower bound ``1/sqrt(repetitions * fisher)``."""
    if not fisher > 0:
        raise InvalidArgument(f"Fisher information must be positive, got {fisher!r}")
    if repetitions < 1:
        raise InvalidArgument(f"repetitions must be >= 1, got {repetitions!r}")
    return 1 / math.sqrt(repetitions * fisher)


def reparametrize_fisher(fisher_theta, dtheta_db0):
    return fisher_theta * dtheta_db0**2


def probe_state(probe, theta):
    """The probe after the phase channel and the loss channel."""
    state = gaussian.displaced_squeezed_thermal(probe)
    state = gaussian.apply_phase_shift(state, theta)
    return gaussian.apply_loss(state, probe.eta)


def _homodyne_moments(probe, theta):
    dens = gaussian.homodyne_p_density(probe_state(probe, theta))
    return dens.mu, dens.sigma2


def fi_numerical(probe, theta, dtheta=1e-4):
    """Homodyne Fisher information from finite differences of the outcome density.

    The mean and variance of the p density are differentiated by central
    differences and the score ``d ln p / d theta`` is integrated against the
    density with 16-point Gauss-Hermite quadrature (exact for a Gaussian).
    """
    if not 1e-6 <= dtheta <= 1e-2:
        raise InvalidArgument(f"dtheta must lie in [1e-6, 1e-2], got {dtheta!r}")
    mu, s2 = _homodyne_moments(probe, theta)
    mu_p, s2_p = _homodyne_moments(probe, theta + dtheta)
    mu_m, s2_m = _homodyne_moments(probe, theta - dtheta)
    if min(s2, s2_p, s2_m) <= 0:
        raise NumericError("degenerate homodyne density")
    dmu = (mu_p - mu_m) / (2 * dtheta)
    ds2 = (s2_p - s2_m) / (2 * dtheta)
    # outcome p = mu + sqrt(s2) z with z standard normal
    z = _HERMITE_NODES
    score = dmu * z / math.sqrt(s2) + ds2 * (z * z - 1) / (2 * s2)
    return float(_HERMITE_WEIGHTS @ score**2 / math.sqrt(2 * math.pi))


def fi_closed_form(probe, theta):
    """Homodyne FI for a displaced thermal probe through loss ``eta``.

    Loss acting on a thermal seed leaves ``eta * n_T`` thermal photons, so the
    outcome variance is ``(1 + 2 eta n_T)/2``. Squeezing is ignored here.
    """
    return 4 * probe.eta * probe.alpha**2 * math.cos(theta) ** 2 / (1 + 2 * probe.eta * probe.n_T)


@dataclass(frozen=True)
class EstimationReport:
    theta_true: float
    trials: int
    samples_per_trial: int
    estimator_mean: float
    estimator_variance: float
    crb: float
    ratio: float
    fisher: float
    clamped: int
    seed: int

    def as_dict(self):
        return asdict(self)


def _estimate_block(probe, theta_true, samples, n_trials, seed_seq):
    state = probe_state(probe, theta_true)
    dens = gaussian.homodyne_p_density(state)
    sigma = math.sqrt(dens.sigma2)
    rng = np.random.default_rng(seed_seq)
    means = np.empty(n_trials)
    rows = max(1, _MC_CHUNK_SAMPLES // samples)
    for start in range(0, n_trials, rows):
        stop = min(n_trials, start + rows)
        draws = rng.normal(dens.mu, sigma, size=(stop - start, samples))
        means[start:stop] = draws.mean(axis=1)
    # mean function mu(theta) = -sqrt(2 eta) alpha sin(theta)
    arg = -means / (math.sqrt(2 * probe.eta) * probe.alpha)
    clamped = int(np.count_nonzero(np.abs(arg) > 1))
    return np.arcsin(np.clip(arg, -1, 1)), clamped


def mc_estimation_experiment(probe, theta_true, samples_per_trial, trials, seed, threads=1):
    """Monte-Carlo check of Cramer-Rao saturation by homodyne estimation.

    Each trial averages ``samples_per_trial`` homodyne outcomes and inverts
    the mean function. For probes whose outcome variance does not depend on
    theta (coherent and thermal, any loss) this is the maximum-likelihood
    estimate. Trials are generated in blocks of ``MC_BLOCK`` with child seeds
    spawned from ``seed``, so the report is independent of ``threads``.
    """
    if trials < 2:
        raise InvalidArgument("trials must be >= 2 for a variance")
    if samples_per_trial < 1:
        raise InvalidArgument("samples_per_trial must be >= 1")
    if not -math.pi / 2 < theta_true < math.pi / 2:
        raise InvalidArgument("theta_true must lie in (-pi/2, pi/2)")
    if probe.alpha <= 0:
        raise InvalidArgument("the estimator needs alpha > 0")
    fisher = fi_closed_form(probe, theta_true) if probe.r == 0 else fi_numerical(probe, theta_true)
    if not samples_per_trial * fisher > 100:
        raise InvalidArgument(
            f"samples_per_trial * fisher = {samples_per_trial * fisher:.3g} <= 100; "
            "outside the asymptotic regime"
        )
    sizes = [min(MC_BLOCK, trials - k) for k in range(0, trials, MC_BLOCK)]
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(probe, theta_true, samples_per_trial, n, ss) for n, ss in zip(sizes, children)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: _estimate_block(*job), jobs))
    else:
        results = [_estimate_block(*job) for job in jobs]
    estimates = np.concatenate([est for est, _ in results])
    clamped = sum(c for _, c in results)
    variance = float(np.var(estimates, ddof=1))
    crb = 1 / (samples_per_trial * fisher)
    return EstimationReport(
        theta_true=float(theta_true),
        trials=int(trials),
        samples_per_trial=int(samples_per_trial),
        estimator_mean=float(np.mean(estimates)),
        estimator_variance=variance,
        crb=crb,
        ratio=variance / crb,
        fisher=float(fisher),
        clamped=clamped,
        seed=int(seed),
    )
