import os

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "stsrank.kernels._ckernels",
        ["src/stsrank/kernels/_ckernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
    )
]

# STSRANK_NO_EXT=1 skips the compiled core; the package then runs on the fallback.
setup(
    ext_modules=[] if os.environ.get("STSRANK_NO_EXT") else cythonize(
        extensions, compiler_directives={"language_level": "3"}
    ),
)
