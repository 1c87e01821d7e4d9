"""Build hook for the optional compiled deduction kernel.

The package is fully functional without the extension; logicweave.logic
falls back to the pure-Python kernel when the compiled module is missing
or when LOGICWEAVE_PURE_PYTHON=1 is set.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LOGICWEAVE_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "logicweave.logic._kernel",
                    ["src/logicweave/logic/_kernel.pyx"],
                    optional=True,
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
