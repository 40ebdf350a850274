import math

import numpy as np
import pytest
from scipy.sparse import diags
from scipy.sparse.linalg import expm_multiply

from wormhole_metrology import gaussian as g
from wormhole_metrology.errors import InvalidArgument, TruncationError
from wormhole_metrology.fock import (
    build_adequate,
    build_displaced_squeezed,
    expectation_a,
    fock_moments,
    fock_quadrature_pdf,
    phase_shift,
)

ALPHAS = [0, 0.5, 1, 2, 3]
SQUEEZES = [0, 0.25, 0.5, 1, 1.5]


def expm_state(alpha, r, dim, pad=4):
    """D(alpha)S(r)|0> by exponentiating the generators on a padded basis."""
    n = pad * dim
    a = diags(np.sqrt(np.arange(1, n)), 1).tocsr()
    vac = np.zeros(n)
    vac[0] = 1.0
    sq = expm_multiply((0.5 * r) * (a @ a - a.T @ a.T), vac)
    return expm_multiply(alpha * (a.T - a), sq)[:dim]


class TestBuild:
    def test_vacuum(self):
        s = build_displaced_squeezed(0, 0, 8)
        np.testing.assert_array_equal(s.amps, [1, 0, 0, 0, 0, 0, 0, 0])

    def test_poisson_weights(self):
        s = build_displaced_squeezed(1, 0, 64)
        n = np.arange(64)
        poisson = np.exp(-1) / np.array([math.factorial(k) for k in n], dtype=float)
        assert np.abs(s.probabilities - poisson).max() <= 1e-10

    def test_squeezed_parity(self):
        s = build_displaced_squeezed(0, 1, 256)
        assert np.abs(s.amps[1::2]).max() <= 1e-12

    @pytest.mark.parametrize("alpha", [0.5, 3.0])
    @pytest.mark.parametrize("r", [0.25, 1.5])
    def test_matches_matrix_exponential(self, alpha, r):
        s = build_displaced_squeezed(alpha, r, 256)
        ref = expm_state(alpha, r, 256)
        assert np.abs(s.amps - ref).max() <= 1e-12

    def test_negative_alpha(self):
        s = build_displaced_squeezed(-1.5, 0.3, 128)
        ref = expm_state(-1.5, 0.3, 128)
        assert np.abs(s.amps - ref).max() <= 1e-12

    def test_normalized(self):
        for a in ALPHAS:
            for r in SQUEEZES:
                s = build_displaced_squeezed(a, r, 256)
                assert abs(np.sum(s.probabilities) - 1) <= 1e-8

    def test_truncation_gate(self):
        with pytest.raises(TruncationError) as info:
            build_displaced_squeezed(3, 0, 16)
        assert info.value.tail_mass >= 1e-10
        assert info.value.dim == 16

    def test_build_adequate_grows(self):
        s = build_adequate(3, 1.5, dim=16)
        assert s.dim >= 256 and s.tail_mass < 1e-10

    def test_dim_validation(self):
        with pytest.raises(InvalidArgument):
            build_displaced_squeezed(0, 0, 1)


class TestMoments:
    def test_coherent(self):
        m, v = fock_moments(build_displaced_squeezed(1, 0, 64))
        assert m == pytest.approx(1, abs=1e-9)
        assert v == pytest.approx(1, abs=1e-9)

    def test_squeezed(self):
        m, v = fock_moments(build_displaced_squeezed(0, 1, 256))
        assert m == pytest.approx(1.3810978455418157, rel=1e-6)
        assert v == pytest.approx(6.5770582090041217, rel=1e-6)

    def test_displaced_squeezed(self):
        _, v = fock_moments(build_displaced_squeezed(1, 0.5, 128))
        assert v == pytest.approx(1.0584283639423502, rel=1e-6)

    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize("r", SQUEEZES)
    def test_lattice_against_gaussian(self, alpha, r):
        m, v = fock_moments(build_displaced_squeezed(alpha, r, 256))
        s = g.displaced_squeezed_thermal(g.ProbeSpec(alpha=alpha, r=r))
        assert m == pytest.approx(g.mean_photon_number(s), rel=1e-6, abs=1e-12)
        assert v == pytest.approx(g.photon_number_variance(s), rel=1e-6, abs=1e-12)

    def test_phase_expectation_sign(self):
        # <a> -> -i<a> under exp(-i pi/2 n); <p> = sqrt(2) Im<a>
        s = phase_shift(build_displaced_squeezed(1, 0, 64), math.pi / 2)
        a = expectation_a(s)
        assert a.real == pytest.approx(0, abs=1e-12)
        assert math.sqrt(2) * a.imag == pytest.approx(-math.sqrt(2), abs=1e-12)


class TestQuadraturePdf:
    def gauss(self, x, mu, var):
        return np.exp(-((x - mu) ** 2) / (2 * var)) / math.sqrt(2 * math.pi * var)

    def test_vacuum(self):
        x = np.linspace(-6, 6, 241)
        pdf = fock_quadrature_pdf(build_displaced_squeezed(0, 0, 8), x)
        assert np.abs(pdf - self.gauss(x, 0, 0.5)).max() <= 1e-8

    def test_rotated_coherent(self):
        x = np.linspace(-8, 6, 281)
        s = phase_shift(build_displaced_squeezed(1, 0, 64), math.pi / 2)
        assert np.abs(fock_quadrature_pdf(s, x) - self.gauss(x, -math.sqrt(2), 0.5)).max() <= 1e-7

    def test_squeezed_antisqueezes_p(self):
        x = np.linspace(-8, 8, 321)
        s = build_displaced_squeezed(0, 0.5, 128)
        assert np.abs(fock_quadrature_pdf(s, x) - self.gauss(x, 0, math.e / 2)).max() <= 1e-6

    def test_x_quadrature(self):
        x = np.linspace(-6, 8, 281)
        s = build_displaced_squeezed(2, 0.3, 128)
        pdf = fock_quadrature_pdf(s, x, quadrature="x")
        assert np.abs(pdf - self.gauss(x, 2 * math.sqrt(2), math.exp(-0.6) / 2)).max() <= 1e-8

    @pytest.mark.parametrize("alpha,r,half_width", [(0, 0, 10), (1, 0.5, 10), (3, 0.25, 10), (2, 1.5, 25)])
    def test_unit_mass(self, alpha, r, half_width):
        s = build_adequate(alpha, r, dim=128)
        x = np.linspace(-half_width, half_width, 8001)
        pdf = fock_quadrature_pdf(s, x)
        assert pdf.min() >= 0
        assert np.trapezoid(pdf, x) == pytest.approx(1, abs=1e-6)

    @pytest.mark.parametrize("alpha,r,theta", [(1, 0.25, 0.4), (2, 0.5, 1.1), (3, 1.0, 2.0), (0.5, 1.5, -0.7)])
    def test_matches_gaussian_density(self, alpha, r, theta):
        s = phase_shift(build_adequate(alpha, r, dim=128), theta)
        gs = g.apply_phase_shift(g.displaced_squeezed_thermal(g.ProbeSpec(alpha=alpha, r=r)), theta)
        dens = g.homodyne_p_density(gs)
        sd = math.sqrt(dens.sigma2)
        x = np.linspace(dens.mu - 6 * sd, dens.mu + 6 * sd, 401)
        assert np.abs(fock_quadrature_pdf(s, x) - dens.pdf(x)).max() <= 1e-6

    def test_bad_quadrature(self):
        with pytest.raises(InvalidArgument):
            fock_quadrature_pdf(build_displaced_squeezed(0, 0, 4), [0.0], quadrature="q")
