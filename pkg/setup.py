"""Builds the optional compiled stencil-kernel extension.

The package is fully functional without it (a numpy fallback is selected
at import time), so any failure to cythonize or compile is non-fatal.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("ampfsi._core.cy_kernels",
                   ["src/ampfsi/_core/cy_kernels.pyx"],
                   include_dirs=[numpy.get_include()],
                   define_macros=[("NPY_NO_DEPRECATED_API",
                                   "NPY_1_7_API_VERSION")])],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"compiled kernels skipped ({exc}); using numpy fallback")

setup(ext_modules=ext_modules)
