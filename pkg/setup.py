"""Build script: compiles the optional Cython kernel extension when possible.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any failure here degrades to a pure-Python
install instead of aborting it. Set NCSCATTER_NO_EXT=1 to skip the extension
build explicitly.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("NCSCATTER_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/ncscatter/_kernels/_core.pyx"],
            compiler_directives={"language_level": "3"},
        )
        for ext in ext_modules:
            ext.include_dirs.append(numpy.get_include())
            ext.extra_compile_args = ["-O3"]
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
