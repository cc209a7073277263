"""Build script for the optional compiled walk-on-spheres kernel.

If Cython, numpy or a C compiler is unavailable the package installs without
the extension and falls back to the numpy kernel at import time.
"""
import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernel not built ({exc}); using numpy fallback", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            if "-fopenmp" in ext.extra_compile_args:
                ext.extra_compile_args = [a for a in ext.extra_compile_args if a != "-fopenmp"]
                ext.extra_link_args = [a for a in ext.extra_link_args if a != "-fopenmp"]
                super().build_extension(ext)
            else:
                raise exc


def extensions():
    if os.environ.get("KOENIGS_NO_EXT"):
        return []
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    omp = [] if sys.platform == "darwin" else ["-fopenmp"]
    ext = Extension(
        "koenigs.harmonic._wos_kernel",
        ["src/koenigs/harmonic/_wos_kernel.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3", *omp],
        extra_link_args=list(omp),
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
