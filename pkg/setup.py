import sys

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "jumpschelling._fastcore",
                ["src/jumpschelling/_fastcore.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API",
                                "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    # The package still works without the compiled core: _core falls back
    # to the pure-Python implementation at import time.
    print("Cython not found, building without the compiled core", file=sys.stderr)

setup(ext_modules=extensions)
