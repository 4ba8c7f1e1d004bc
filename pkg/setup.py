from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "coxhurwitz._ckernels",
        ["src/coxhurwitz/_ckernels.pyx"],
        language="c++",
        extra_compile_args=["-O2", "-std=c++11"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
