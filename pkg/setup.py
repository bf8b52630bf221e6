import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LISTCOLOR_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # fall back to the pure-Python solver
        cythonize = None
    if cythonize is not None:
        ext = Extension(
            "listcolor.paintability._ckernel",
            ["src/listcolor/paintability/_ckernel.pyx"],
            language="c++",
            extra_compile_args=["-O2", "-std=c++17"],
        )
        ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
