"""Build script: compiles the optional C kernel when Cython is available.

The package is fully functional without the extension; `wlab.backend`
falls back to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "wlab._ckernel",
                ["src/wlab/_ckernel.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
