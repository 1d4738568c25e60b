"""Build script for the compiled kernel extension.

The pure-Python backend and the compiled one must stay bit-identical, so
the extension is compiled without FP contraction or fast-math shortcuts:
the C compiler may not fuse or reassociate what CPython will not.
"""

from Cython.Build import cythonize
from setuptools import Extension, setup

extension = Extension(
    "rank1gen._core",
    sources=["src/rank1gen/_core.pyx"],
    extra_compile_args=["-O3", "-ffp-contract=off", "-fno-fast-math"],
)

setup(
    ext_modules=cythonize(
        [extension],
        compiler_directives={"language_level": "3"},
    ),
)
