"""Build script: compiles the optional Cython kernels.

If Cython or a C compiler is missing, the package still installs and falls
back to ``sowdist._pykernels`` at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("SOWDIST_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "sowdist._kernels",
                    ["src/sowdist/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
