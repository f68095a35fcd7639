import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SUPERALG_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("superalg._speedups", ["src/superalg/_speedups.pyx"])],
            language_level=3,
        )
    except ImportError:
        # the pure-Python kernel is a full drop-in replacement
        ext_modules = []

setup(ext_modules=ext_modules)
