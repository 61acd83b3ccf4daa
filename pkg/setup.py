"""Build script.

The compiled kernel is optional: if Cython or a C compiler is missing the
package installs with the pure-Python kernel only.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/quantcurve/_kernels_cy.pyx"],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
