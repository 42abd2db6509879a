"""Build script for the optional compiled kernels.

The package is pure Python except for ``bcfuse._kernels``, a small Cython
extension accelerating the edit-distance and isomorphism-search inner loops.
If Cython or a C compiler is unavailable the build silently falls back to the
pure-Python twin (``bcfuse._kernels_py``); nothing else changes.

Set BCFUSE_PURE_PYTHON=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Tolerate a failing extension build; the package works without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"WARNING: building bcfuse._kernels failed ({exc}); "
              "falling back to the pure-Python kernels")


ext_modules = []
if not os.environ.get("BCFUSE_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("bcfuse._kernels", ["src/bcfuse/_kernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        print("WARNING: Cython not installed; using pure-Python kernels")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
