from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "qbackflow.kernels._compiled",
        ["src/qbackflow/kernels/_compiled.pyx"],
    ),
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    ),
)
