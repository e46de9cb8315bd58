"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (a pure NumPy
fallback is selected at import time), so the extension is marked
optional: a failed compile must not fail the install.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "superkron._core",
                ["src/superkron/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
    for ext in extensions:
        ext.optional = True
except ImportError:
    extensions = []

setup(ext_modules=extensions)
