from Cython.Build import cythonize
from setuptools import setup

setup(
    ext_modules=cythonize(
        "src/betahole/_core.pyx",
        language_level="3",
    ),
)
