"""Build script: compiles the optional speed kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so any failure here degrades to a source-only install
instead of aborting.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "plmoves._kernel._speed",
                sources=["src/plmoves/_kernel/_speed.pyx"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - environment without Cython
    print("speed kernel not built (%s); using pure-Python fallback" % exc)

setup(ext_modules=ext_modules)
