import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "supjcir._kernels",
        ["src/supjcir/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        depends=["src/supjcir/_kernel_loops.h"],
        # fast-math lets gcc call the glibc vector expm1/log1p in the node loop
        extra_compile_args=["-O3", "-ffast-math", "-fopenmp-simd"],
        libraries=["mvec", "m"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
