"""Build the optional compiled sweep kernel.

The package is fully functional without the extension: curvkit._kernels
falls back to the numpy implementation when the compiled module is absent.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "curvkit._kernels._sweep",
                ["src/curvkit/_kernels/_sweep.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
