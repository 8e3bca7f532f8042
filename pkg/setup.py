"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension; clusterkit.kernels
falls back to the pure-Python implementations when the import fails.
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
                "clusterkit._ckernels",
                ["src/clusterkit/_ckernels.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
