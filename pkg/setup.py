from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no compiler toolchain: the pure-Python kernels are used
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "coinweigh._ckernels",
                ["src/coinweigh/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
