"""Build script: compiles the optional search kernels if Cython is available.

The package is fully functional without the compiled extension -- the
pure-Python kernels in ``vecflow._kernels`` are selected automatically at
import time when the extension is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "vecflow._kernels._search_c",
                ["src/vecflow/_kernels/_search_c.pyx"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
