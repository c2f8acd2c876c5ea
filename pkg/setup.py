"""Build hook for the compiled kernel extension.

The package works without the extension (a numpy fallback is selected at
import); cythonize only when Cython is available.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    import numpy as np
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("ghastates._kernels",
                   sources=["src/ghastates/_kernels.pyx"],
                   include_dirs=[np.get_include()],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
