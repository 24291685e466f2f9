"""Build script.

The compiled extension is optional: when Cython or a C compiler is missing
the package installs in pure-Python mode and the solvers fall back to the
numpy implementations selected in fracdrift._backend.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/fracdrift/_native.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # noqa: BLE001 - any build-chain problem means "no extension"
    print(f"fracdrift: building without native extension ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
