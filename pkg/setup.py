from setuptools import Extension, setup
from Cython.Build import cythonize

ext = Extension("edgeinsert._kernels", ["src/edgeinsert/_kernels.pyx"])
setup(ext_modules=cythonize([ext], language_level=3))
