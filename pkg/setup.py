"""Build hook for the optional compiled kernel.

The package works without the extension; _backend falls back to the pure
Python kernel when the import fails, so build errors here are non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "algid._ckernel",
                ["src/algid/_ckernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
