"""Build hook: compile the Cython kernels when possible, otherwise install pure Python."""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, no Cython, ...
            print(f"warning: compiled kernels not built ({exc}); using the pure-Python backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); using the pure-Python backend")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        return cythonize(["src/drinlevel/_ckernels.pyx"], language_level=3, quiet=True)
    except Exception as exc:
        print(f"warning: cythonize failed ({exc}); using the pure-Python backend")
        return []


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
