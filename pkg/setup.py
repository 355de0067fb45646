"""Build the optional compiled PBW kernel.

If Cython or a C compiler is unavailable the package installs without the
extension and ``qasl.kernel`` falls back to the pure-Python implementation.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("QASL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("qasl._ckernel", ["src/qasl/_ckernel.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
