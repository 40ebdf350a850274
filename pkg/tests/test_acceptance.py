"""Exit criteria. Each test prints one PASS/FAIL line, even without ``-s``."""
import contextlib
import math
import time
from dataclasses import replace

import numpy as np
import pytest

from wormhole_metrology import cli, gaussian, metrology, sensitivity, spacetime
from wormhole_metrology.fock import build_displaced_squeezed, fock_moments

pytestmark = pytest.mark.acceptance

LAMBDA = 1e-6


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title, budget_s=None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            if budget_s is not None:
                assert elapsed < budget_s, f"took {elapsed:.2f} s, budget {budget_s} s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f} s)")
    return run


def fig_bundle(L, r1_over_L, r1_over_b0, n=1e22):
    return sensitivity.SensitivityInput(
        spacetime.WormholeScenario.from_ratios(LAMBDA, L, r1_over_L, r1_over_b0), n
    )


def test_1_oracle_equivalence(criterion):
    with criterion(1, "Fock-oracle moments vs closed-form QFI and <n> on the 5x5 lattice (1e-6 rel)", 10):
        for alpha in (0, 0.5, 1, 2, 3):
            for r in (0, 0.25, 0.5, 1, 1.5):
                mean_n, var_n = fock_moments(build_displaced_squeezed(alpha, r, 256))
                assert mean_n == pytest.approx(alpha**2 + math.sinh(r) ** 2, rel=1e-6, abs=1e-12)
                assert 4 * var_n == pytest.approx(metrology.qfi_pure_gaussian(alpha, r), rel=1e-6, abs=1e-12)
        _, var = fock_moments(build_displaced_squeezed(0, 1, 256))
        assert var == pytest.approx(6.57706, abs=5e-6)
        assert metrology.qfi_pure_gaussian(0, 1) == pytest.approx(26.3082, abs=5e-5)
        _, var = fock_moments(build_displaced_squeezed(1, 0.5, 256))
        assert 4 * var == pytest.approx(4.23370, rel=1e-5)


def test_2_homodyne_fisher(criterion):
    with criterion(2, "numerical homodyne FI = 4a^2cos^2(theta) with eta and n_T scalings (1e-4 rel)", 5):
        for alpha in (1, 10):
            for theta in (0, 0.3, 0.6, 1.2):
                base = 4 * alpha**2 * math.cos(theta) ** 2
                probes = [
                    (gaussian.ProbeSpec(alpha=alpha), base),
                    (gaussian.ProbeSpec(alpha=alpha, eta=0.62), 0.62 * base),
                    (gaussian.ProbeSpec(alpha=alpha, n_T=1), base / 3),
                ]
                for probe, expected in probes:
                    assert metrology.fi_numerical(probe, theta) == pytest.approx(expected, rel=1e-4)


def test_3_cramer_rao_saturation(criterion):
    with criterion(3, "MC homodyne estimator variance / CRB in [0.9, 1.1] (alpha=10, M=1e4, 1e3 trials)", 30):
        rep = metrology.mc_estimation_experiment(gaussian.ProbeSpec(alpha=10), 0.0, 10_000, 1_000, seed=7)
        assert 0.9 <= rep.ratio <= 1.1, rep


def test_4_figure_reproduction(criterion):
    with criterion(4, "figure2/figure3 bundles give 7.958e-4 at <n>=1e22 (1e-3 rel); QFI vs FI within 1e-6"):
        for inp in (fig_bundle(1e9, 1e2, 1e11), fig_bundle(1e3, 1e8, 1e5)):
            assert sensitivity.relative_sensitivity(inp) == pytest.approx(7.958e-4, rel=1e-3)
            curve = sensitivity.sweep(
                inp, "n_photons", np.logspace(18, 22, 41),
                {"qfi": {"information": "qfi"}, "fi": {"information": "homodyne-fi"}},
            )
            q, f = np.array(curve.columns["qfi"]), np.array(curve.columns["fi"])
            assert np.all(np.abs(f - q) / q <= 1e-6)


def test_5_threshold_claim(criterion):
    with criterion(5, "tolerance 0.1: sensitivity 0.0796 at r1/b0=1e12, b0_min ~ 10 cm"):
        inp = fig_bundle(1e9, 1e2, 1e11)
        at_1e12 = inp.with_ratio(1e12)
        value = sensitivity.relative_sensitivity(at_1e12)
        assert value == pytest.approx(0.0796, abs=5e-5) and value <= 0.1
        assert at_1e12.scenario.b0 == pytest.approx(0.1, rel=1e-12)
        res = sensitivity.max_distance_ratio(inp, 0.1)
        # one significant figure: 0.1 m stands for [0.05, 0.15)
        assert 0.05 <= res.b0_min < 0.15
        assert round(math.log10(res.r1_over_b0)) == 12


def test_6_phase_detectability(criterion):
    with criterion(6, "pi b0^2/r1^3 = 1e-22 (L=1 km) and 1e-34 (L=1e6 km) per m, 1e-12 rel"):
        assert spacetime.detectable_curvature(1e-10, 1e3, LAMBDA) == pytest.approx(1e-22, rel=1e-12)
        assert spacetime.detectable_curvature(1e-10, 1e9, LAMBDA) == pytest.approx(1e-34, rel=1e-12)
        # consistent with the forward phase model
        for L in (1e3, 1e9):
            b0, r1 = 1.0, 1e12
            delta = spacetime.phase_correction(L, LAMBDA, r1, b0)
            assert math.pi * b0**2 / r1**3 == pytest.approx(spacetime.detectable_curvature(delta, L, LAMBDA), rel=1e-12)


def test_7_mimicker_distances(criterion):
    with criterion(7, "mimicker r1 = 1.08e11 m (3.5 upc) and 1.08e15 m (0.035 pc), within x3.5 of 10 upc / 0.1 pc"):
        near = sensitivity.mimicker_distance(2e5, 1e-10, 1e3, LAMBDA)
        far = sensitivity.mimicker_distance(2e5, 1e-10, 1e9, LAMBDA)
        assert near == pytest.approx(1.08e11, rel=5e-3)
        assert far == pytest.approx(1.08e15, rel=5e-3)
        pc = sensitivity.PARSEC
        assert 1 / 3.5 <= (near / pc) / 10e-6 <= 3.5
        assert 1 / 3.5 <= (far / pc) / 0.1 <= 3.5


def test_8_property_suites(criterion):
    with criterion(8, "uncertainty, loss semigroup, phase conservation, chain rule, expansion, noise-model bracketing"):
        rng = np.random.default_rng(8)
        for _ in range(300):
            alpha, r, n_T = rng.uniform(-4, 4), rng.uniform(-1.5, 1.5), rng.uniform(0, 3)
            e1, e2, theta = rng.uniform(0.01, 1), rng.uniform(0.01, 1), rng.uniform(-7, 7)
            s = gaussian.displaced_squeezed_thermal(gaussian.ProbeSpec(alpha=alpha, r=r, n_T=n_T))
            t = gaussian.apply_phase_shift(s, theta)
            assert np.linalg.det(gaussian.apply_loss(t, e1).cov) >= 0.25 - 1e-12
            assert gaussian.apply_loss(gaussian.apply_loss(s, e1), e2).allclose(
                gaussian.apply_loss(s, e1 * e2), atol=1e-12 * max(1.0, np.abs(s.cov).max(), np.abs(s.mean).max()))
            assert gaussian.mean_photon_number(t) == pytest.approx(gaussian.mean_photon_number(s), rel=1e-12, abs=1e-12)
            assert gaussian.photon_number_variance(t) == pytest.approx(
                gaussian.photon_number_variance(s), rel=1e-12, abs=1e-12)
        for _ in range(1000):
            lam = 10 ** rng.uniform(-9, -5)
            L = lam * 10 ** rng.uniform(2, 14)
            r1 = L * 10 ** rng.uniform(2, 8)
            b0 = r1 * 10 ** rng.uniform(-14, -2)
            inp = sensitivity.SensitivityInput(spacetime.WormholeScenario(b0, r1, L, lam), 10 ** rng.uniform(0, 24))
            assert sensitivity.sensitivity_via_chain_rule(inp) == pytest.approx(
                sensitivity.relative_sensitivity(inp), rel=1e-12)
        import mpmath as mp
        mp.mp.dps = 50
        for _ in range(100):
            r1 = 10 ** rng.uniform(3, 15)
            b0, L = r1 * 10 ** rng.uniform(-6, -3), r1 * 10 ** rng.uniform(-6, -2)
            sc = spacetime.WormholeScenario(b0, r1, L, 1e-9 * L)
            exact = (mp.sqrt((mp.mpf(r1) + L) ** 2 - mp.mpf(b0) ** 2) - mp.sqrt(mp.mpf(r1) ** 2 - mp.mpf(b0) ** 2) - L) / L
            assert b0**2 / (2 * r1 * sc.r2) == pytest.approx(float(exact), rel=1e-2)
        fig4 = replace(fig_bundle(1e6, 1e5, 1e7), information="homodyne-fi")
        base = sensitivity.relative_sensitivity(fig4)
        printed = sensitivity.relative_sensitivity(replace(fig4, eta=0.62))
        derived = sensitivity.relative_sensitivity(replace(fig4, eta=0.62, noise_model="fisher-derived"))
        assert printed == pytest.approx(0.62 * base, rel=1e-12)
        assert derived == pytest.approx(base / math.sqrt(0.62), rel=1e-12)
        header = open_golden("figure4").splitlines()
        columns = next(line for line in header if not line.startswith("#")).split(",")
        assert any(c.startswith("as_printed") for c in columns)
        assert any(c.startswith("fisher_derived") for c in columns)


def open_golden(name):
    from pathlib import Path

    return (Path(__file__).parent / "golden" / f"{name}.csv").read_text()


def test_9_determinism(criterion, tmp_path):
    with criterion(9, "figure2/3/4 preset CSVs byte-identical across runs and to the committed goldens"):
        for name in ("figure2", "figure3", "figure4"):
            outputs = []
            for k in range(2):
                path = tmp_path / f"{name}_{k}.csv"
                assert cli.main([name, "--out", str(path), "--seed", "7"]) == 0
                outputs.append(path.read_bytes())
            assert outputs[0] == outputs[1]
            plain = tmp_path / f"{name}_plain.csv"
            cli.main([name, "--out", str(plain)])
            assert plain.read_text() == open_golden(name)
