"""Build script.

The package is pure Python; the hot kernels (group pairing tables, the
finite-Fourier sweep used by the Weil-representation checks, and sparse
series convolution) have an optional Cython twin in refmod._kernels._ckernels.
If Cython or a C compiler is missing the build silently degrades and the
pure-Python kernels are used instead.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension(
        "refmod._kernels._ckernels",
        sources=["src/refmod/_kernels/_ckernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


class optional_build_ext(build_ext):
    """Swallow compiler failures so a plain install still works."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print("warning: C kernel build failed (%s); using pure-Python kernels" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            print("warning: building %s failed (%s)" % (ext.name, exc))


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
