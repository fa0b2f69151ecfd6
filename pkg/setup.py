"""Build script: compiles the optional see-saw extension.

If no C compiler (or Cython) is available the package still installs and
falls back to the pure-numpy see-saw backend at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "circwitness._seesaw_cy",
                sources=["src/circwitness/_seesaw_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
