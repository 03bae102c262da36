"""Build script: compiles the optional finite-field elimination core.

The package works without the extension (a pure numpy fallback is selected
at import time), so a failed compile only costs speed.  Build with
``pip install -e . --no-build-isolation``.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Skip the extension (with a warning) instead of failing the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"WARNING: compiled core skipped ({exc}); "
                  "pure-Python fallback will be used", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"WARNING: building {ext.name} failed ({exc}); "
                  "pure-Python fallback will be used", file=sys.stderr)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available; compiled core skipped",
              file=sys.stderr)
        return []
    from setuptools import Extension

    ext = Extension(
        "fatpoints._core",
        ["src/fatpoints/_core.pyx"],
        include_dirs=["src/fatpoints"],
        extra_compile_args=["-O3", "-funroll-loops", "-march=native"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
