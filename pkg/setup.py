"""Build the optional compiled kernel; the package works without it."""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("VERTCONF_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("vertconf._ckernel", ["src/vertconf/_ckernel.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
