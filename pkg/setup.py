"""Build the optional compiled Numerov kernel; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("MRSOLVE_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("mrsolve._numerov", ["src/mrsolve/_numerov.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
