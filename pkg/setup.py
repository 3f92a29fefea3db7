"""Builds the optional compiled kernels.

The package works without them: ``celcs.kernels`` falls back to the pure
Python implementation when ``celcs._ckernels`` cannot be imported.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CELCS_NO_EXTENSIONS"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("celcs._ckernels", ["src/celcs/_ckernels.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "embedsignature": True,
            },
        )

setup(ext_modules=ext_modules)
