"""Build script: compiles the optional term-kernel extension when Cython and
a C compiler are available; otherwise the package installs pure-Python and
selects the fallback kernels at import."""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(["src/kvertex/_kernels.pyx"], language_level=3)
except Exception:
    pass

setup(ext_modules=ext_modules)
