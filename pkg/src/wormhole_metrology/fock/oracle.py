"""Brute-force Fock-basis representation of displaced squeezed vacua.

This module shares no formulas with :mod:`wormhole_metrology.gaussian`; it is
the independent side of every moment and homodyne-density check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgument, TruncationError
from . import _kernels

TAIL_FRACTION = 0.1
TAIL_GATE = 1e-10


@dataclass(frozen=True)
class FockVector:
    amps: np.ndarray
    dim: int
    tail_mass: float

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def probabilities(self):
        return np.abs(self.amps) ** 2


def tail_mass(amps):
    """Probability weight carried by the top 10% of the basis."""
    amps = np.asarray(amps)
    start = amps.size - max(1, int(math.ceil(TAIL_FRACTION * amps.size)))
    return float(np.sum(np.abs(amps[start:]) ** 2))


def build_displaced_squeezed(alpha, r, dim):
    """Amplitudes of ``D(alpha) S(r)|0>`` truncated to ``dim`` states.

    The squeezed vacuum comes from its two-step recursion; with a nonzero
    displacement the amplitudes follow from the eigenvalue relation of the
    transformed annihilation operator.

    Raises
    ------
    TruncationError
        If the top 10% of the basis holds 1e-10 or more of the weight.
    """
    if int(dim) != dim or dim < 2:
        raise InvalidArgument(f"dim must be an integer >= 2, got {dim!r}")
    if not (math.isfinite(alpha) and math.isfinite(r)):
        raise InvalidArgument("alpha and r must be finite")
    dim = int(dim)
    if alpha == 0:
        amps = _kernels.squeezed_vacuum(float(r), dim)
    else:
        amps = _kernels.displaced_squeezed(float(alpha), float(r), dim)
    norm = math.sqrt(float(amps @ amps))
    amps = amps / norm
    tail = tail_mass(amps)
    if not tail < TAIL_GATE:
        raise TruncationError(
            f"tail mass {tail:.3e} >= {TAIL_GATE:g} at dim={dim}", tail, dim
        )
    return FockVector(amps.astype(complex), dim, tail)


def build_adequate(alpha, r, dim=64, max_dim=4096):
    """Build the state, doubling ``dim`` until the tail-mass gate passes."""
    while True:
        try:
            return build_displaced_squeezed(alpha, r, dim)
        except TruncationError:
            if dim * 2 > max_dim:
                raise
            dim *= 2


def phase_shift(state, theta):
    """Apply ``exp(-i theta n)``."""
    n = np.arange(state.dim)
    return FockVector(state.amps * np.exp(-1j * theta * n), state.dim, state.tail_mass)


def fock_moments(state):
    p = state.probabilities
    n = np.arange(state.dim, dtype=float)
    mean_n = float(n @ p)
    var_n = float((n * n) @ p - mean_n**2)
    return mean_n, var_n


def expectation_a(state):
    """``<a>`` from adjacent-amplitude overlaps."""
    c = state.amps
    return complex(np.sum(np.sqrt(np.arange(1, state.dim)) * np.conj(c[:-1]) * c[1:]))


def fock_quadrature_pdf(state, grid, quadrature="p"):
    """Outcome density of an x or p homodyne measurement on ``grid``.

    Uses ``<p|n> = (-i)^n psi_n(p)`` with ``psi_n`` the normalized Hermite
    functions of the x representation.
    """
    grid = np.asarray(grid, dtype=float)
    if not np.all(np.isfinite(grid)):
        raise InvalidArgument("grid must be finite")
    if quadrature == "p":
        coeffs = state.amps * (-1j) ** np.arange(state.dim)
    elif quadrature == "x":
        coeffs = state.amps
    else:
        raise InvalidArgument(f"quadrature must be 'x' or 'p', got {quadrature!r}")
    return np.abs(_kernels.wavefunction(coeffs, grid)) ** 2
