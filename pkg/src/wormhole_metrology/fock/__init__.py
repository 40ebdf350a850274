"""Truncated Fock-space oracle with compiled and numpy kernels."""
from ._kernels import BACKEND
from .oracle import (
    FockVector,
    build_adequate,
    build_displaced_squeezed,
    expectation_a,
    fock_moments,
    fock_quadrature_pdf,
    phase_shift,
    tail_mass,
)

__all__ = [
    "BACKEND",
    "FockVector",
    "build_adequate",
    "build_displaced_squeezed",
    "expectation_a",
    "fock_moments",
    "fock_quadrature_pdf",
    "phase_shift",
    "tail_mass",
]
