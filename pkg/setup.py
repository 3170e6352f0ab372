"""Build script.

The compiled localization kernel is optional: if Cython (or a C compiler)
is unavailable, the build proceeds and the package falls back to the pure
Python twin at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dtseries._kernel_cy",
                ["src/dtseries/_kernel_cy.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
