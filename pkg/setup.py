"""Build script: compiles the optional exact-arithmetic kernel extension.

The package works without the extension (a pure-Python twin of the kernels is
selected at import time), so any build failure here should be treated as
"install without speedups" rather than a hard error.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("cremfan._kernels", ["src/cremfan/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
