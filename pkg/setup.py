"""Build script: compiles the optional search-kernel extension.

The package works without the extension (pure-Python kernels are selected
at import time), so a failed compile should not block installation; build
with RAINBOWMATCH_REQUIRE_EXT=1 to turn compile failures into hard errors.
"""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "rainbowmatch._speedups",
                ["src/rainbowmatch/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
elif os.environ.get("RAINBOWMATCH_REQUIRE_EXT"):
    raise RuntimeError("Cython is required to build the compiled kernels")

setup(ext_modules=ext_modules)
