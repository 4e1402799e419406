"""Build hook for the optional compiled kernel core.

The package is pure Python by default; when Cython and a C compiler are
available this builds ``bqgames._ckernels``, which the backend selector
picks up at import time. Set BQGAMES_NO_EXT=1 to skip the extension.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BQGAMES_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "bqgames._ckernels",
                    ["src/bqgames/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
