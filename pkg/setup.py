"""Build script for the compiled Fock-space kernels.

The extension is optional: if Cython or a C compiler is missing the package
installs without it and falls back to the numpy kernels at import time.
"""
import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("WORMHOLE_METROLOGY_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "wormhole_metrology.fock._kernels_ext",
                    ["src/wormhole_metrology/fock/_kernels_ext.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
