from setuptools import Extension, setup

# The compiled exponential kernel is optional: if Cython (or a C compiler)
# is unavailable the package installs without it and numkernel falls back
# to the pure-numpy backend at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "logatlas._expm_cy",
                ["src/logatlas/_expm_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
