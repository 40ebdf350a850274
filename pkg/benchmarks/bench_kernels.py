"""Compare the compiled Fock kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from wormhole_metrology.fock import _kernels

CASES = {
    "displaced_squeezed(3, 1.5, 4096)": lambda k: k.displaced_squeezed(3.0, 1.5, 4096),
    "squeezed_vacuum(1.5, 4096)": lambda k: k.squeezed_vacuum(1.5, 4096),
    "hermite_functions(401 pts, 256)": lambda k: k.hermite_functions(np.linspace(-10, 10, 401), 256),
    "wavefunction(256 coeffs, 2001 pts)": lambda k: k.wavefunction(
        np.full(256, 1 / 16, dtype=complex), np.linspace(-10, 10, 2001)
    ),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = _kernels.backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the numpy fallback is available")
    names = sorted(backends)
    print(f"{'kernel':40s}" + "".join(f"{n:>14s}" for n in names) + ("   speedup" if len(names) == 2 else ""))
    for label, fn in CASES.items():
        times = {}
        for name in names:
            mod = backends[name]
            number = 3
            times[name] = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
        row = f"{label:40s}" + "".join(f"{times[n] * 1e3:11.3f} ms" for n in names)
        if len(names) == 2:
            row += f"   {times['python'] / times['compiled']:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
