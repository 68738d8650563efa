from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python fallback is selected at import time
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "superfactor._flow",
                ["src/superfactor/_flow.pyx"],
                # no FMA contraction or sin/cos fusion: keeps results bitwise equal to the Python kernel
                extra_compile_args=["-O2", "-ffp-contract=off", "-fno-builtin"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
