"""Pure numpy implementations of the Fock-space kernels.

Signatures and results match the compiled ``_kernels_ext`` module; this
module is used when the extension is not built.
"""
import math

import numpy as np

_RESCALE_AT = 1e150


def squeezed_vacuum(r, dim):
    """Fock amplitudes of ``S(r)|0>`` for the first ``dim`` basis states."""
    out = np.zeros(dim)
    out[0] = 1.0 / math.sqrt(math.cosh(r))
    t = -math.tanh(r)
    for n in range(2, dim, 2):
        out[n] = out[n - 2] * t * math.sqrt((n - 1) / n)
    return out


def displaced_squeezed(alpha, r, dim):
    """Unnormalized Fock amplitudes of ``D(alpha) S(r)|0>`` for real ``alpha``.

    The state is annihilated by ``a cosh(r) + a^dag sinh(r) - gamma`` with
    ``gamma = alpha e^r``, which gives a forward three-term recurrence that
    stays accurate to ~1e-15 (the displacement matrix-element recurrence does
    not). Partial results are rescaled to dodge overflow.
    """
    ch, sh = math.cosh(r), math.sinh(r)
    gamma = alpha * (ch + sh)
    out = np.zeros(dim)
    out[0] = 1.0
    if dim > 1:
        out[1] = gamma / ch
    for n in range(1, dim - 1):
        out[n + 1] = (gamma * out[n] - sh * math.sqrt(n) * out[n - 1]) / (ch * math.sqrt(n + 1))
        if abs(out[n + 1]) > _RESCALE_AT:
            out[: n + 2] /= _RESCALE_AT
    return out


def hermite_functions(x, nmax):
    """Normalized Hermite functions ``psi_n(x)``, shape ``(nmax, len(x))``."""
    x = np.asarray(x, dtype=float)
    table = np.empty((nmax, x.size))
    table[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if nmax > 1:
        table[1] = math.sqrt(2.0) * x * table[0]
    for n in range(1, nmax - 1):
        table[n + 1] = (
            math.sqrt(2.0 / (n + 1)) * x * table[n] - math.sqrt(n / (n + 1)) * table[n - 1]
        )
    return table


def wavefunction(coeffs, x):
    """Evaluate ``sum_n coeffs[n] psi_n(x)`` for complex ``coeffs``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    return coeffs @ hermite_functions(x, coeffs.size)
