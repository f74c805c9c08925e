from setuptools import Extension, setup

# The compiled kernel is optional: without Cython (or a C compiler) the
# package installs pure-Python and selects the fallback at import.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("fflat._core._kernel", ["src/fflat/_core/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
