from setuptools import Extension, setup

# The compiled kernels are an optional accelerator. Without Cython (or without
# a working compiler) the install still succeeds and the package falls back to
# the pure-Python kernels at import time.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "vscover._kernels",
                ["src/vscover/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
