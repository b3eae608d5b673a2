"""Build hook for the optional compiled congruence kernel.

The package works without the extension: dimon.congruence falls back to
the pure-Python kernel when dimon._tc_core is missing.  Building needs
Cython and a C compiler; failure to build is non-fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "dimon._tc_core",
                ["src/dimon/_tc_core.pyx"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
