"""Build the optional compiled kernels. The package works without them."""
from setuptools import Extension, setup

DIRECTIVES = dict(
    boundscheck=False,
    wraparound=False,
    cdivision=True,
    nonecheck=False,
    embedsignature=True,
    language_level=3,
)

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "voxcurve._ckernels",
                ["src/voxcurve/_ckernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives=DIRECTIVES,
    )

setup(ext_modules=ext_modules)
