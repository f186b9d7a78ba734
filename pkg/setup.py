import os

from setuptools import Extension, setup

extensions = []
if os.environ.get("BIDIAGTRACE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        extensions = cythonize(
            [
                Extension(
                    "bidiagtrace._kernels",
                    ["src/bidiagtrace/_kernels.pyx"],
                    # keep a*b + c as two roundings so both kernel sets agree bitwise
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=extensions)
