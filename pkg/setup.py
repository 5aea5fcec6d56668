"""Build script: compiles the Monte Carlo kernel extension if Cython and a C
compiler are available.  The package works without it (pure-Python fallback
selected at import), so a failed extension build is not fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "cycform.weights._kernel",
                ["src/cycform/weights/_kernel.pyx"],
                # -ffp-contract=off: no FMA fusion, keeps the compiled kernel
                # bit-identical to the pure-Python fallback.
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
