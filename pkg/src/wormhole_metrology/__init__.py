"""Quantum metrology numerics for detecting an Ellis wormhole.

Submodules
----------
gaussian
    Single-mode Gaussian states, channels and homodyne statistics.
fock
    Truncated Fock-basis oracle (compiled kernels with a numpy fallback).
metrology
    Fisher information, Cramer-Rao bounds, Monte-Carlo phase estimation.
spacetime
    Ellis-wormhole proper lengths and propagation phases.
sensitivity
    Throat-radius sensitivity, sweeps, thresholds, mimicker distances.
cli
    ``wormhole-metrology`` command line.
"""
__version__ = "0.1.0"
